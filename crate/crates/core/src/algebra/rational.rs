use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Scales `coeffs` in place to coprime integers whose first nonzero entry is
/// positive. Returns `false` if every entry is zero.
pub fn normalize_integral<'a, I>(coeffs: I) -> bool
where
    I: IntoIterator<Item = &'a mut Rational>,
{
    let mut entries: Vec<&mut Rational> = coeffs.into_iter().filter(|c| !c.is_zero()).collect();
    if entries.is_empty() {
        return false;
    }
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let gcd = entries.iter().fold(BigInt::zero(), |acc, c| {
        acc.gcd(&(c.numer() * (&lcm / c.denom())))
    });
    let flip = entries[0].is_negative();
    let factor = Rational::new(if flip { -lcm } else { lcm }, gcd);
    for c in entries.iter_mut() {
        **c = &**c * &factor;
    }
    true
}
