// Copyright 2026 The qcagrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;

/// Entrywise tolerance for gate equality and unitarity checks.
pub const GATE_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Matrix2(entries)
    }

    pub const fn identity() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Matrix2([[h, h], [h, -h]])
    }

    pub const fn pauli_x() -> Self {
        Matrix2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Matrix2([[ZERO, Complex64::new(0.0, -1.0)], [i, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    /// `diag(1, e^{iθ})`.
    pub fn phase(theta: f64) -> Self {
        Matrix2([[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, theta)]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self.adjoint() * *self;
        let identity = Matrix2::identity();
        product.max_entry_distance(&identity)
    }

    pub fn max_entry_distance(&self, other: &Matrix2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Matrix2, tolerance: f64) -> bool {
        self.max_entry_distance(other) <= tolerance
    }

    /// Applies the matrix to the amplitude pair `(a0, a1)`.
    #[inline]
    pub fn apply(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }

    /// `[[[re, im], ...], ...]`, the wire form used by the JSON formats.
    pub fn to_pairs(&self) -> [[[f64; 2]; 2]; 2] {
        self.0.map(|row| row.map(|z| [z.re, z.im]))
    }

    pub fn from_pairs(pairs: [[[f64; 2]; 2]; 2]) -> Self {
        Matrix2(pairs.map(|row| row.map(|[re, im]| Complex64::new(re, im))))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}
