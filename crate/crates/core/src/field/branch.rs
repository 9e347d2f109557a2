//! Numeric points of the parameter space together with chosen square roots.

use num_complex::Complex64;

use crate::error::FieldError;

const ROOT_TOL: f64 = 1e-14;
const LOCUS_TOL: f64 = 1e-12;

/// A point `(a, b)` with values of `√a`, `√(1−a)`, `√b`, `√(1−b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchPoint {
    pub a: Complex64,
    pub b: Complex64,
    pub sqrt_a: Complex64,
    pub sqrt_1ma: Complex64,
    pub sqrt_b: Complex64,
    pub sqrt_1mb: Complex64,
}

fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

impl BranchPoint {
    /// Validates the square roots and checks that `(a, b)` avoids the excluded loci.
    pub fn new(
        a: Complex64,
        b: Complex64,
        sqrt_a: Complex64,
        sqrt_1ma: Complex64,
        sqrt_b: Complex64,
        sqrt_1mb: Complex64,
    ) -> Result<Self, FieldError> {
        let one = Complex64::new(1.0, 0.0);
        let checks = [
            (sqrt_a * sqrt_a, a, "sqrt_a^2 != a"),
            (sqrt_1ma * sqrt_1ma, one - a, "sqrt_1ma^2 != 1-a"),
            (sqrt_b * sqrt_b, b, "sqrt_b^2 != b"),
            (sqrt_1mb * sqrt_1mb, one - b, "sqrt_1mb^2 != 1-b"),
        ];
        for (sq, target, msg) in checks {
            if !close(sq, target, ROOT_TOL) {
                return Err(FieldError::InvalidBranchPoint(msg.to_string()));
            }
        }
        let near = |x: Complex64, y: Complex64| (x - y).norm() <= LOCUS_TOL;
        let zero = Complex64::new(0.0, 0.0);
        for (v, name) in [(a, "a"), (b, "b")] {
            if near(v, zero) || near(v, one) {
                return Err(FieldError::InvalidBranchPoint(format!("{name} is 0 or 1")));
            }
        }
        let excluded = [
            (b, "a = b"),
            (one - b, "a = 1-b"),
            (one / b, "a = 1/b"),
            (one / (one - b), "a = 1/(1-b)"),
            ((b - one) / b, "a = (b-1)/b"),
            (b / (b - one), "a = b/(b-1)"),
        ];
        for (v, msg) in excluded {
            if near(a, v) {
                return Err(FieldError::InvalidBranchPoint(format!("excluded locus {msg}")));
            }
        }
        Ok(BranchPoint { a, b, sqrt_a, sqrt_1ma, sqrt_b, sqrt_1mb })
    }

    /// The base-region branch for real negative `a`, `b`: `√a = i√|a|` and
    /// `√(1−a) > 0`, likewise for `b`.
    pub fn principal(a: f64, b: f64) -> Result<Self, FieldError> {
        if !(a < 0.0 && b < 0.0) {
            return Err(FieldError::InvalidBranchPoint("principal branch needs a, b < 0".to_string()));
        }
        BranchPoint::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(0.0, (-a).sqrt()),
            Complex64::new((1.0 - a).sqrt(), 0.0),
            Complex64::new(0.0, (-b).sqrt()),
            Complex64::new((1.0 - b).sqrt(), 0.0),
        )
    }

    /// Same point with the signs of the square roots flipped per `mask`
    /// (bit 0: √a, bit 1: √(1−a), bit 2: √b, bit 3: √(1−b)).
    pub fn with_signs(&self, mask: usize) -> Self {
        let s = |bit: usize, v: Complex64| if mask & (1 << bit) != 0 { -v } else { v };
        BranchPoint {
            sqrt_a: s(0, self.sqrt_a),
            sqrt_1ma: s(1, self.sqrt_1ma),
            sqrt_b: s(2, self.sqrt_b),
            sqrt_1mb: s(3, self.sqrt_1mb),
            ..*self
        }
    }

    /// Value of the square-root monomial with flags `m`.
    pub fn monomial_value(&self, m: usize) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for (bit, r) in [self.sqrt_a, self.sqrt_1ma, self.sqrt_b, self.sqrt_1mb].into_iter().enumerate() {
            if m & (1 << bit) != 0 {
                v *= r;
            }
        }
        v
    }

    /// Moves `(a, b)` by real offsets, keeping each root on the branch
    /// continuous with the current one.
    pub fn shifted(&self, da: f64, db: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let a = self.a + da;
        let b = self.b + db;
        let follow = |target: Complex64, prev: Complex64| {
            let r = target.sqrt();
            if (r - prev).norm() <= (-r - prev).norm() {
                r
            } else {
                -r
            }
        };
        BranchPoint {
            a,
            b,
            sqrt_a: follow(a, self.sqrt_a),
            sqrt_1ma: follow(one - a, self.sqrt_1ma),
            sqrt_b: follow(b, self.sqrt_b),
            sqrt_1mb: follow(one - b, self.sqrt_1mb),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_branch_values() {
        let p = BranchPoint::principal(-1.0, -4.0).unwrap();
        assert_eq!(p.sqrt_a, Complex64::new(0.0, 1.0));
        assert_eq!(p.sqrt_b, Complex64::new(0.0, 2.0));
        assert!((p.monomial_value(1 | 4) - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_excluded_locus() {
        assert!(BranchPoint::principal(-1.0, -1.0).is_err());
        assert!(BranchPoint::principal(-0.5, -2.0).is_err());
    }

    #[test]
    fn rejects_wrong_root() {
        let one = Complex64::new(1.0, 0.0);
        let a = Complex64::new(-1.0, 0.0);
        let b = Complex64::new(-2.0, 0.0);
        assert!(BranchPoint::new(a, b, one, one, one, one).is_err());
    }
}
