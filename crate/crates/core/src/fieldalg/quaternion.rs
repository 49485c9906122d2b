use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A real quaternion `a + b i + c j + d k`.
///
/// Real and complex scalars are embedded as quaternions with vanishing
/// `j`/`k` (and `i`) components, which lets one matrix type serve all three
/// fields.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Quaternion::new(z.re, z.im, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Components as a fixed array.
    pub fn components(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The 2×2 complex block `[[α, β], [-β̄, ᾱ]]` with `α = a + bi`,
    /// `β = c + di`.
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.a, self.b), Complex64::new(self.c, self.d))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    // Hamilton product
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a * o.a - self.b * o.b - self.c * o.c - self.d * o.d,
            self.a * o.b + self.b * o.a + self.c * o.d - self.d * o.c,
            self.a * o.c - self.b * o.d + self.c * o.a + self.d * o.b,
            self.a * o.d + self.b * o.c - self.c * o.b + self.d * o.a,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[test]
    fn hamilton_relations() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(I * I, -Quaternion::ONE);
        assert_eq!(J * I, -K);
    }

    #[test]
    fn norm_is_multiplicative_and_conj_reverses() {
        let p = Quaternion::new(0.3, -1.2, 0.7, 2.0);
        let q = Quaternion::new(-0.5, 0.25, 1.5, -0.75);
        assert!(((p * q).norm() - p.norm() * q.norm()).abs() < 1e-14);
        let lhs = (p * q).conj();
        let rhs = q.conj() * p.conj();
        assert!((lhs - rhs).norm() < 1e-15);
    }
}
