//! Exact rational arithmetic: Bernoulli numbers, Riemann zeta values at
//! negative odd integers, and the proportionality constants `gamma_g`.
//!
//! All scalar arithmetic in this crate is exact; no floating point appears
//! anywhere. Rationals are always kept in lowest terms with a positive
//! denominator, and serialize as `"p/q"` (just `"p"` when the denominator
//! is 1).

use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational from a pair of machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from a single machine integer.
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// `(-1)^n` as a rational.
pub fn sign_pow(n: u64) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Format a rational in the `"p/q"` wire format (`"p"` when `q == 1`).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the `"p/q"` wire format. Rejects zero denominators instead of
/// panicking, so untrusted input can be handled gracefully.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer =
        BigInt::from_str(num_str.trim()).map_err(|_| format!("invalid rational `{s}`"))?;
    let denom =
        BigInt::from_str(den_str.trim()).map_err(|_| format!("invalid rational `{s}`"))?;
    if denom.is_zero() {
        return Err(format!("invalid rational `{s}`: zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Memoized table of Bernoulli numbers `B_0, B_1, B_2, ...` under the
/// convention `B_1 = -1/2`.
///
/// Entries are produced by the defining recurrence
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0` for `n >= 1`, which makes odd-index
/// vanishing (`B_n = 0` for odd `n >= 3`) automatic.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Table holding `B_0 .. B_n` inclusive.
    pub fn up_to(n: usize) -> Self {
        let mut table = BernoulliTable {
            values: vec![Rational::one()],
        };
        table.extend_to(n);
        table
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `B_n`; panics if the table was not built far enough.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let m = self.values.len(); // computing B_m
            let mut acc = Rational::zero();
            for (j, b) in self.values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = binomial(BigInt::from(m as u64 + 1), BigInt::from(j as u64));
                acc += Rational::from_integer(c) * b;
            }
            let value = -acc / rat_int(m as i64 + 1);
            self.values.push(value);
        }
    }
}

fn global_table() -> &'static Mutex<BernoulliTable> {
    static TABLE: OnceLock<Mutex<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(BernoulliTable::up_to(24)))
}

/// Bernoulli number `B_n` (convention `B_1 = -1/2`), memoized per process.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = global_table().lock().expect("bernoulli table poisoned");
    table.extend_to(n);
    table.get(n).clone()
}

/// Riemann zeta at the negative odd integer `1 - 2m`:
/// `zeta(1-2m) = (-1)^m |B_{2m}| / (2m)`.
pub fn zeta_neg(m: u32) -> Rational {
    assert!(m >= 1, "zeta_neg: m must be positive");
    let b = bernoulli(2 * m as usize).abs();
    sign_pow(m as u64) * b / rat_int(2 * m as i64)
}

/// The proportionality constant `gamma_g = prod_{i=1}^{g} |B_{2i}| / (4i)`,
/// the degree of the full lambda monomial on the compact moduli space.
pub fn gamma_g(g: u32) -> Rational {
    assert!(g >= 1, "gamma_g: g must be positive");
    let mut acc = Rational::one();
    for i in 1..=g {
        acc *= bernoulli(2 * i as usize).abs() / rat_int(4 * i as i64);
    }
    acc
}

/// `gamma_g` in its zeta form
/// `(-1)^{g(g+1)/2} 2^{-g} zeta(-1) zeta(-3) ... zeta(1-2g)`.
///
/// Agrees with [`gamma_g`] exactly; kept as an independent route for
/// cross-checking.
pub fn gamma_g_from_zeta(g: u32) -> Rational {
    assert!(g >= 1, "gamma_g_from_zeta: g must be positive");
    let mut acc = sign_pow(g as u64 * (g as u64 + 1) / 2) / rat_int(1i64 << g);
    for j in 1..=g {
        acc *= zeta_neg(j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route to B_n: the double-sum formula
    /// `B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n`
    /// (with `0^0 = 1`), which also lands on the `B_1 = -1/2` convention.
    fn bernoulli_double_sum(n: usize) -> Rational {
        let mut total = Rational::zero();
        for k in 0..=n {
            let mut inner = Rational::zero();
            for j in 0..=k {
                let c = binomial(BigInt::from(k as u64), BigInt::from(j as u64));
                let jn = if j == 0 {
                    if n == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    BigInt::from(j as u64).pow(n as u32)
                };
                inner += sign_pow(j as u64) * Rational::from_integer(c * jn);
            }
            total += inner / rat_int(k as i64 + 1);
        }
        total
    }

    #[test]
    fn bernoulli_base_cases() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
    }

    #[test]
    fn bernoulli_odd_vanishing() {
        for n in (3..32).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn bernoulli_matches_double_sum_oracle() {
        for n in 0..=20 {
            assert_eq!(bernoulli(n), bernoulli_double_sum(n), "B_{n}");
        }
        // frozen value obtained from the oracle
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_residual_is_zero() {
        let table = BernoulliTable::up_to(32);
        for n in 1..=32usize {
            let mut acc = Rational::zero();
            for j in 0..=n {
                let c = binomial(BigInt::from(n as u64 + 1), BigInt::from(j as u64));
                acc += Rational::from_integer(c) * table.get(j);
            }
            // the defining recurrence sums to zero except at n = 0
            assert!(acc.is_zero(), "recurrence residual nonzero at n = {n}");
        }
    }

    #[test]
    fn zeta_neg_values() {
        assert_eq!(zeta_neg(1), rat(-1, 12));
        assert_eq!(zeta_neg(2), rat(1, 120));
        assert_eq!(zeta_neg(3), rat(-1, 252));
    }

    #[test]
    fn zeta_neg_sign_alternates() {
        for m in 1..=12 {
            let z = zeta_neg(m);
            if m % 2 == 0 {
                assert!(z.is_positive(), "zeta(1-2*{m}) should be positive");
            } else {
                assert!(z.is_negative(), "zeta(1-2*{m}) should be negative");
            }
        }
    }

    #[test]
    fn gamma_small_genus() {
        assert_eq!(gamma_g(1), rat(1, 24));
        assert_eq!(gamma_g(2), rat(1, 5760));
        assert_eq!(gamma_g(4), rat(1, 1393459200));
    }

    #[test]
    fn gamma_product_and_zeta_forms_agree() {
        for g in 1..=12 {
            assert_eq!(gamma_g(g), gamma_g_from_zeta(g), "gamma_{g}");
        }
    }

    #[test]
    fn rational_wire_format_round_trip() {
        for s in ["0", "1", "-1", "1/24", "-691/2730", "420"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
