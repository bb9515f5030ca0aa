//! Local matrices of the three-site bulk term, the boundary fields and the
//! colored terms. Local basis: index 0 = down, 1 = up; in a multi-site window
//! the first site is the most significant digit.

use nalgebra::DMatrix;

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn kron3(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> DMatrix<f64> {
    kron(&kron(a, b), c)
}

fn eye(n: usize) -> DMatrix<f64> {
    DMatrix::identity(n, n)
}

pub(crate) fn sigma_z() -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 1.0]))
}

pub(crate) fn sigma_x() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

fn proj_up() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0])
}

fn proj_down() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])
}

/// `σ_a · σ_b` on two sites; `σ^y ⊗ σ^y` is real.
fn heisenberg_pair() -> DMatrix<f64> {
    let xx = kron(&sigma_x(), &sigma_x());
    let yy = DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0,
        ],
    );
    let zz = kron(&sigma_z(), &sigma_z());
    xx + yy + zz
}

/// `|S><S|` with `|S> = (|↑↓> - |↓↑>)/√2`.
fn singlet_projector() -> DMatrix<f64> {
    let mut s = DMatrix::zeros(4, 1);
    s[(0b10, 0)] = std::f64::consts::FRAC_1_SQRT_2;
    s[(0b01, 0)] = -std::f64::consts::FRAC_1_SQRT_2;
    &s * s.transpose()
}

/// `|↑><↑| ⊗ |S><S| + |S><S| ⊗ |↓><↓|`.
pub(crate) fn bulk_projector() -> DMatrix<f64> {
    kron(&proj_up(), &singlet_projector()) + kron(&singlet_projector(), &proj_down())
}

/// `(1 + σ^z_j)(1 - σ_{j+1}·σ_{j+2}) + (1 - σ_j·σ_{j+1})(1 - σ^z_{j+2})`.
pub(crate) fn bulk_pauli() -> DMatrix<f64> {
    let one = eye(2);
    let first = kron(&(&one + sigma_z()), &(eye(4) - heisenberg_pair()));
    let second = kron(&(eye(4) - heisenberg_pair()), &(&one - sigma_z()));
    first + second
}

/// Controlled swap on a 3-site window: swaps `targets` when `control` is up.
fn fredkin_gate(control: usize, targets: (usize, usize)) -> DMatrix<f64> {
    let bit = |x: usize, pos: usize| (x >> (2 - pos)) & 1;
    let mut m = DMatrix::zeros(8, 8);
    for x in 0..8usize {
        let y = if bit(x, control) == 1 {
            let (p, q) = targets;
            let (bp, bq) = (bit(x, p), bit(x, q));
            let cleared = x & !(1 << (2 - p)) & !(1 << (2 - q));
            cleared | (bq << (2 - p)) | (bp << (2 - q))
        } else {
            x
        };
        m[(y, x)] = 1.0;
    }
    m
}

/// `(1 - F_{j,j+1,j+2}) + (1 - σ^x_{j+2} F_{j+2,j+1,j} σ^x_{j+2})`.
pub(crate) fn bulk_fredkin_gate() -> DMatrix<f64> {
    let flip_last = kron3(&eye(2), &eye(2), &sigma_x());
    let first = eye(8) - fredkin_gate(0, (1, 2));
    let second = eye(8) - &flip_last * fredkin_gate(2, (1, 0)) * &flip_last;
    first + second
}

/// `½(1 - α σ^z)` on the first site.
pub(crate) fn left_boundary(alpha: f64) -> DMatrix<f64> {
    (eye(2) - sigma_z() * alpha) * 0.5
}

/// `½(1 + β σ^z)` on the last site.
pub(crate) fn right_boundary(beta: f64) -> DMatrix<f64> {
    (eye(2) + sigma_z() * beta) * 0.5
}

fn colored_digit(up: bool, color: usize, k: usize) -> usize {
    up as usize * k + color
}

/// Colored three-site term: for every color triple, the normalized projectors
/// onto `|↓c1 ↑c2 ↓c3> - |↑c2 ↓c3 ↓c1>` and `|↑c1 ↑c2 ↓c3> - |↑c2 ↓c3 ↑c1>`.
pub(crate) fn colored_bulk(k: usize) -> DMatrix<f64> {
    let d = 2 * k;
    let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    let mut m = DMatrix::zeros(d * d * d, d * d * d);
    for c1 in 0..k {
        for c2 in 0..k {
            for c3 in 0..k {
                for bystander_up in [false, true] {
                    let u = idx(
                        colored_digit(bystander_up, c1, k),
                        colored_digit(true, c2, k),
                        colored_digit(false, c3, k),
                    );
                    let v = idx(
                        colored_digit(true, c2, k),
                        colored_digit(false, c3, k),
                        colored_digit(bystander_up, c1, k),
                    );
                    m[(u, u)] += 0.5;
                    m[(v, v)] += 0.5;
                    m[(u, v)] -= 0.5;
                    m[(v, u)] -= 0.5;
                }
            }
        }
    }
    m
}

/// Colored two-site term `P+_j P-_{j+1} - (1/k)|s><s|`, `|s> = Σ_c |↑c ↓c>`.
pub(crate) fn colored_exchange(k: usize) -> DMatrix<f64> {
    let d = 2 * k;
    let mut m = DMatrix::zeros(d * d, d * d);
    for a in 0..k {
        for b in 0..k {
            let i = colored_digit(true, a, k) * d + colored_digit(false, b, k);
            m[(i, i)] += 1.0;
        }
    }
    for a in 0..k {
        for b in 0..k {
            let i = colored_digit(true, a, k) * d + colored_digit(false, a, k);
            let j = colored_digit(true, b, k) * d + colored_digit(false, b, k);
            m[(i, j)] -= 1.0 / k as f64;
        }
    }
    m
}

/// Projector onto all down (`up = false`) or all up colored states of a site.
pub(crate) fn colored_direction_projector(k: usize, up: bool) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for c in 0..k {
        let i = colored_digit(up, c, k);
        m[(i, i)] = 1.0;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bulk_projector_matrix_elements() {
        let p = bulk_projector();
        // <(()|H|()(> = -1/2
        assert!((p[(0b110, 0b101)] + 0.5).abs() < 1e-15);
        assert!((p[(0b110, 0b110)] - 0.5).abs() < 1e-15);
        // <())|H|)()> = -1/2
        assert!((p[(0b100, 0b010)] + 0.5).abs() < 1e-15);
        // idempotent: sum of two orthogonal rank-1 projectors
        assert!((&p * &p - &p).abs().max() < 1e-15);
    }

    #[test]
    fn fredkin_gate_is_an_involution() {
        let f = fredkin_gate(0, (1, 2));
        assert_eq!(&f * &f, eye(8));
        assert_eq!(f.transpose(), f);
    }

    #[test]
    fn fredkin_form_annihilates_control_symmetric_states() {
        // control up, targets symmetric: |1>(|01> + |10>)
        let mut v = nalgebra::DVector::zeros(8);
        v[0b101] = 1.0;
        v[0b110] = 1.0;
        let first = eye(8) - fredkin_gate(0, (1, 2));
        assert!((first * v).norm() < 1e-15);
    }

    #[test]
    fn forms_are_proportional() {
        let p = bulk_projector();
        assert!((bulk_pauli() - &p * 8.0).abs().max() < 1e-12);
        assert!((bulk_fredkin_gate() - &p * 2.0).abs().max() < 1e-12);
    }

    #[test]
    fn colored_k1_reduces() {
        assert!((colored_bulk(1) - bulk_projector()).abs().max() < 1e-15);
        assert!(colored_exchange(1).abs().max() < 1e-15);
    }
}
