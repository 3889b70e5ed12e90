use std::cmp::Ordering;

/// Exponent vector over an ambient variable context.
///
/// Ordered graded-lexicographically: higher total degree is greater, ties
/// broken lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree at most `degree`,
/// in descending graded-lex order.
pub fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, nvars: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, nvars, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y2 = Monomial::new(vec![0, 2]);
        let x = Monomial::new(vec![1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn basis_size_is_binomial() {
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(3, 4).len(), 35);
        assert!(monomials_up_to(2, 1)[0] == Monomial::new(vec![1, 0]));
    }

    #[test]
    fn division_and_gcd() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![1, 3]);
        assert_eq!(a.gcd(&b), Monomial::new(vec![1, 1]));
        assert_eq!(a.div(&Monomial::new(vec![1, 1])), Some(Monomial::new(vec![1, 0])));
        assert_eq!(a.div(&b), None);
    }
}
