//! Truncated Baker-Campbell-Hausdorff series `z(x, y) = log(exp x · exp y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "x",
            Letter::Y => "y",
        })
    }
}

/// `coeff · [a_1, [a_2, [… , a_k]]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchTerm {
    pub coeff: BigRational,
    pub word: Vec<Letter>,
}

impl BchTerm {
    pub fn weight(&self) -> usize {
        self.word.len()
    }

    /// Coefficient as `(num, den)` machine integers, `den > 0`.
    pub fn coeff_i64(&self) -> Option<(i64, i64)> {
        Some((self.coeff.numer().to_i64()?, self.coeff.denom().to_i64()?))
    }
}

impl fmt::Display for BchTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = self.word.last().map(|l| l.to_string()).unwrap_or_default();
        for l in self.word.iter().rev().skip(1) {
            s = format!("[{l},{s}]");
        }
        write!(f, "{} {}", self.coeff, s)
    }
}

/// The series truncated at weight `class`, as a sum of right-nested brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchSeries {
    pub class: usize,
    pub terms: Vec<BchTerm>,
}

impl fmt::Display for BchSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class={} terms={}", self.class, self.terms.len())?;
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All sequences of `k` pairs `(r_i, s_i)` with `r_i + s_i ≥ 1` summing to `n`.
fn compositions(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for w in 1..=n.saturating_sub(k - 1) {
        for r in 0..=w {
            for mut rest in compositions(n - w, k - 1) {
                rest.insert(0, (r, w - r));
                out.push(rest);
            }
        }
    }
    out
}

/// Dynkin's formula: terms are right-nested brackets of the letter sequence
/// `x^{r_1} y^{s_1} … x^{r_k} y^{s_k}` with coefficient
/// `(-1)^{k-1} / (k · n · Π r_i! s_i!)`.
fn dynkin_raw(class: usize) -> Vec<BchTerm> {
    let mut out = Vec::new();
    for n in 1..=class {
        for k in 1..=n {
            let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            for comp in compositions(n, k) {
                let mut den = BigInt::from(k * n);
                let mut word = Vec::with_capacity(n);
                for &(r, s) in &comp {
                    den *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(Letter::X, r));
                    word.extend(std::iter::repeat_n(Letter::Y, s));
                }
                out.push(BchTerm { coeff: BigRational::new(sign.clone(), den), word });
            }
        }
    }
    out
}

/// Drop words ending in a repeated letter, rewrite `…,y,x]` as `-…,x,y]`, and
/// merge equal words.
fn simplify(raw: Vec<BchTerm>) -> Vec<BchTerm> {
    let mut acc: BTreeMap<(usize, Vec<Letter>), BigRational> = BTreeMap::new();
    for mut t in raw {
        let k = t.word.len();
        if k >= 2 {
            if t.word[k - 2] == t.word[k - 1] {
                continue;
            }
            if t.word[k - 2] == Letter::Y {
                t.word.swap(k - 2, k - 1);
                t.coeff = -t.coeff;
            }
        }
        *acc.entry((k, t.word)).or_insert_with(BigRational::zero) += t.coeff;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((_, word), coeff)| BchTerm { coeff, word }).collect()
}

/// Truncated series through weight `class` (`class ≥ 1`).
pub fn bch_terms(class: usize) -> BchSeries {
    assert!(class >= 1, "class bound must be positive");
    BchSeries { class, terms: simplify(dynkin_raw(class)) }
}

/// Elements of the free associative algebra on `x, y`, truncated at a weight.
type Poly = BTreeMap<Vec<Letter>, BigRational>;

fn poly_add(a: &mut Poly, b: &Poly, scale: &BigRational) {
    for (w, c) in b {
        let e = a.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c * scale;
        if e.is_zero() {
            a.remove(w);
        }
    }
}

fn poly_mul(a: &Poly, b: &Poly, max: usize) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > max {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let e = out.entry(w.clone()).or_insert_with(BigRational::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

fn monomial(word: Vec<Letter>) -> Poly {
    Poly::from([(word, BigRational::one())])
}

/// `[a_1, [a_2, …]]` expanded as `a P - P a`.
fn expand_word(word: &[Letter], max: usize) -> Poly {
    let (last, init) = word.split_last().expect("nonempty word");
    let mut p = monomial(vec![*last]);
    for &l in init.iter().rev() {
        let left = poly_mul(&monomial(vec![l]), &p, max);
        let right = poly_mul(&p, &monomial(vec![l]), max);
        p = left;
        poly_add(&mut p, &right, &-BigRational::one());
    }
    p
}

/// The series as an element of the free associative algebra.
pub fn expand_series(series: &BchSeries) -> BTreeMap<Vec<Letter>, BigRational> {
    let mut out = Poly::new();
    for t in &series.terms {
        poly_add(&mut out, &expand_word(&t.word, series.class), &t.coeff);
    }
    out
}

fn exp_letter(l: Letter, max: usize) -> Poly {
    (0..=max).map(|k| (vec![l; k], BigRational::new(BigInt::one(), factorial(k)))).collect()
}

/// `log(exp x · exp y)` computed directly in the truncated free associative
/// algebra; independent of the Dynkin expansion.
pub fn log_exp_product(class: usize) -> BTreeMap<Vec<Letter>, BigRational> {
    let mut w = poly_mul(&exp_letter(Letter::X, class), &exp_letter(Letter::Y, class), class);
    w.remove(&vec![]);
    let mut out = Poly::new();
    let mut power = w.clone();
    for k in 1..=class {
        let c = BigRational::new(if k % 2 == 1 { BigInt::one() } else { -BigInt::one() }, BigInt::from(k));
        poly_add(&mut out, &power, &c);
        power = poly_mul(&power, &w, class);
    }
    out
}

/// Whether the Dynkin terms agree with `log(exp x · exp y)` through `class`.
pub fn cross_check(class: usize) -> bool {
    expand_series(&bch_terms(class)) == log_exp_product(class)
}

/// Largest prime factor of any coefficient denominator.
pub fn max_denominator_prime(series: &BchSeries) -> u64 {
    let mut best = 1;
    for t in &series.terms {
        let mut d = t.coeff.denom().abs().to_u64().expect("small denominators");
        let mut f = 2;
        while d > 1 {
            while d % f == 0 {
                best = best.max(f);
                d /= f;
            }
            f += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn low_weight_closed_forms() {
        use Letter::*;
        let s = bch_terms(1);
        assert_eq!(s.terms, vec![BchTerm { coeff: q(1, 1), word: vec![X] }, BchTerm { coeff: q(1, 1), word: vec![Y] }]);
        let s = bch_terms(2);
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[2], BchTerm { coeff: q(1, 2), word: vec![X, Y] });
        let s = bch_terms(3);
        let w3: Vec<_> = s.terms.iter().filter(|t| t.weight() == 3).cloned().collect();
        // 1/12 [x,[x,y]] + 1/12 [y,[y,x]] = 1/12 [x,[x,y]] - 1/12 [y,[x,y]]
        assert_eq!(
            w3,
            vec![BchTerm { coeff: q(1, 12), word: vec![X, X, Y] }, BchTerm { coeff: q(-1, 12), word: vec![Y, X, Y] }]
        );
    }

    #[test]
    fn dynkin_matches_log_exp() {
        for c in 1..=6 {
            assert!(cross_check(c), "class {c}");
        }
    }

    #[test]
    fn denominators_only_involve_small_primes() {
        for c in 1..=6 {
            assert!(max_denominator_prime(&bch_terms(c)) <= c as u64);
        }
    }

    #[test]
    fn weight_four_has_no_pure_words() {
        let s = bch_terms(4);
        assert!(s.terms.iter().all(|t| t.weight() <= 4));
        assert!(s.terms.iter().filter(|t| t.weight() == 1).all(|t| t.coeff == q(1, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(bch_terms(2).terms[2].to_string(), "1/2 [x,y]");
    }
}
