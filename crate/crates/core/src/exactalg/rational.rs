use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pattern::Sign;

/// Exact rational number with a positive, reduced denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p/q` or `p` with an optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim().trim_start_matches('+');
    let bad = || Error::Parse(format!("bad rational literal {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a nonzero rational; `None` for zero.
pub fn sign_of(r: &Rational) -> Option<Sign> {
    if r.is_zero() {
        None
    } else {
        Some(Sign::from_negative(r.is_negative()))
    }
}

/// Bareiss fraction-free elimination on an integer matrix, consumed in place.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division is exact");
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of a square rational matrix: clear each row's denominators,
/// run Bareiss over the integers, divide the row multipliers back out.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let out = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            scale *= l;
            out
        })
        .collect();
    Rational::new(bareiss_det(int_rows), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("-25/17").unwrap(), ratio(-25, 17));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert_eq!(parse_rational("+6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(-7)), "-7");
    }

    #[test]
    fn small_determinants() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect()
        };
        assert_eq!(det(&[]), int(1));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(
            det(&m(&[&[3, -2, -2], &[-2, 3, -1], &[-2, -1, 3]])),
            int(-8)
        );
        assert_eq!(det(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), int(0));
        let half = vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 3), ratio(1, 2)],
        ];
        assert_eq!(det(&half), ratio(5, 36));
    }
}
