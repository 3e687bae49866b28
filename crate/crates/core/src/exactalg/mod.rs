//! Exact rationals and sparse multivariate polynomials over Q.

mod monomial;
mod parse;
mod poly;
mod rational;
mod var;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{MultiPoly, Witness};
pub use rational::Rational;
pub use var::Var;

/// Shorthand used throughout the crate and its tests.
pub fn p(s: &str) -> MultiPoly {
    parse_poly(s).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

/// q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32) -> MultiPoly {
    MultiPoly::from_terms((0..n).map(|i| (Monomial::var(Var::Q, i), Rational::one())))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> MultiPoly {
    (1..=n).fold(MultiPoly::one(), |acc, i| &acc * &q_int(i))
}

/// q-binomial coefficient `[n]_q! / ([k]_q! [n-k]_q!)`. The quotient is
/// always a polynomial, so a failed division is a bug.
pub fn q_binomial(n: u32, k: u32) -> MultiPoly {
    if k > n {
        return MultiPoly::zero();
    }
    let den = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n).exact_div(&den).expect("q-binomial is a polynomial")
}

/// Rising factorial `v (v+1) ... (v+k-1)`.
pub fn rising(v: &MultiPoly, k: u32) -> MultiPoly {
    (0..k).fold(MultiPoly::one(), |acc, i| &acc * &(v + &MultiPoly::int(i as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    #[test]
    fn canonical_serialization() {
        let f = p("3*y^2 + 4*z*y + 2*z^2");
        assert_eq!(f.to_string(), "2*z^2 + 4*y*z + 3*y^2");
        assert_eq!(p("(1 - x)^2").to_string(), "1 - 2*x + x^2");
        assert_eq!(p("x/2 - 3/4").to_string(), "-3/4 + 1/2*x");
        assert_eq!(p("0*x").to_string(), "0");
        assert_eq!(p("-phi0*w' + 2xi1").to_string(), "2*xi1 - w'*phi0");
    }

    #[test]
    fn nonneg_witness() {
        let w = p("1 - 2*x + x^2").negative_witness().unwrap();
        assert_eq!(w.monomial, Monomial::var(Var::X, 1));
        assert_eq!(w.coeff, Rational::from_int(-2));
        let w = p("-1 + 2*w' + 2*w'^2").negative_witness().unwrap();
        assert!(w.monomial.is_one());
        assert_eq!(w.coeff, Rational::from_int(-1));
        assert!(p("2*z^2 + 4*y*z").is_coeffwise_nonneg());
    }

    #[test]
    fn exact_division() {
        let a = p("x^3 - y^3");
        let q = a.exact_div(&p("x - y")).unwrap();
        assert_eq!(q, p("x^2 + x*y + y^2"));
        assert!(a.exact_div(&p("x + y")).is_err());
        assert!(a.exact_div(&MultiPoly::zero()).is_err());
    }

    #[test]
    fn substitution_and_coefficients() {
        let f = p("x*y + y^2*z");
        let g = f.substitute(&HashMap::from([(Var::Y, p("1 + q"))]));
        assert_eq!(g, p("x*(1+q) + (1+q)^2*z"));
        assert_eq!(f.coeff_of(Var::Y, 2), p("z"));
        assert_eq!(f.degree_in(Var::Y), 2);
        assert!(!f.is_homogeneous(|_| 1, 2));
        assert!(p("x*y + z^2").is_homogeneous(|_| 1, 2));
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_binomial(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert_eq!(q_int(3), p("1 + q + q^2"));
        assert_eq!(rising(&p("y"), 3), p("y*(y+1)*(y+2)"));
    }

    #[test]
    fn q_binomial_matches_pascal() {
        // [n,k] = [n-1,k-1] + q^k [n-1,k]
        for n in 1..9u32 {
            for k in 1..n {
                let rhs = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).mul_term(&Monomial::var(Var::Q, k), &Rational::one());
                assert_eq!(q_binomial(n, k), rhs, "n={n} k={k}");
            }
            assert!(q_binomial(n, 0).is_one() && q_binomial(n, n).is_one());
        }
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let vars = [Var::X, Var::Y, Var::Q, Var::phi(1)];
        prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..2, 0u32..2), 0..6).prop_map(
            move |ts| {
                MultiPoly::from_terms(ts.into_iter().map(|(c, a, b, d, e)| {
                    (
                        Monomial::from_pairs([(vars[0], a), (vars[1], b), (vars[2], d), (vars[3], e)]),
                        Rational::from_int(c),
                    )
                }))
            },
        )
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn division_inverts_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let ab = &a * &b;
            prop_assert_eq!(ab.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn substitution_is_a_homomorphism(a in arb_poly(), b in arb_poly(), s in arb_poly()) {
            let bind = HashMap::from([(Var::Y, s)]);
            prop_assert_eq!((&a * &b).substitute(&bind), &a.substitute(&bind) * &b.substitute(&bind));
        }
    }
}
