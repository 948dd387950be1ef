//! Single-qubit fixtures.

use crate::linalg::{ComplexMatrix, C64, ONE, ZERO};

const I: C64 = C64::new(0.0, 1.0);

fn m2(a: C64, b: C64, c: C64, d: C64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![a, b, c, d]).expect("2x2 literal")
}

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// σ_x
pub fn x() -> ComplexMatrix {
    m2(ZERO, ONE, ONE, ZERO)
}

/// σ_y = [[0, -i], [i, 0]]
pub fn y() -> ComplexMatrix {
    m2(ZERO, -I, I, ZERO)
}

/// σ_z
pub fn z() -> ComplexMatrix {
    m2(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> ComplexMatrix {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    m2(h, h, h, -h)
}

/// The 4x4 permutation exchanging the two tensor factors of C² ⊗ C².
pub fn swap() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 2)] = ONE;
    m[(2, 1)] = ONE;
    m[(3, 3)] = ONE;
    m
}
