//! δε-chains: orderings of the symbols `δ_i`, `ε_j`, whose consecutive
//! differences form a simple system. Neighbor swaps realize simple
//! reflections; odd ones (mixed δ/ε neighbors) act on highest weights by
//! `λ ↦ λ` if `⟨λ,α⟩ = 0` and `λ ↦ λ − α` otherwise.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Parity};
use crate::error::{Error, Result};
use crate::pair::PairParams;
use crate::roots::HWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Delta,
    Eps,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::Delta => 'd',
            Kind::Eps => 'e',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSymbol {
    pub kind: Kind,
    /// 1-based.
    pub index: usize,
}

impl ChainSymbol {
    pub fn delta(index: usize) -> Self {
        Self { kind: Kind::Delta, index }
    }

    pub fn eps(index: usize) -> Self {
        Self { kind: Kind::Eps, index }
    }

    pub fn weight(&self, n_delta: usize, n_eps: usize) -> HWeight {
        match self.kind {
            Kind::Delta => HWeight::delta_unit(n_delta, n_eps, self.index),
            Kind::Eps => HWeight::eps_unit(n_delta, n_eps, self.index),
        }
    }
}

impl fmt::Display for ChainSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

impl FromStr for ChainSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidChain(format!("symbol {s:?} is not of the form d<k> or e<k>"));
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('d') => Kind::Delta,
            Some('e') => Kind::Eps,
            _ => return Err(bad()),
        };
        let index: usize = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Self { kind, index })
    }
}

/// A sequence of distinct symbols living in `h*` with `n_delta` δ's and `n_eps` ε's.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaEpsChain {
    symbols: Vec<ChainSymbol>,
    n_delta: usize,
    n_eps: usize,
}

impl DeltaEpsChain {
    pub fn new(symbols: Vec<ChainSymbol>, n_delta: usize, n_eps: usize) -> Result<Self> {
        for (k, s) in symbols.iter().enumerate() {
            let limit = match s.kind {
                Kind::Delta => n_delta,
                Kind::Eps => n_eps,
            };
            if s.index > limit {
                return Err(Error::InvalidChain(format!("{s} exceeds the available range 1..={limit}")));
            }
            if symbols[..k].contains(s) {
                return Err(Error::InvalidChain(format!("{s} occurs twice")));
            }
        }
        Ok(Self { symbols, n_delta, n_eps })
    }

    /// Parses `"d2 e2 e1 d1"`; the ambient shape is the largest index of each kind.
    pub fn parse(s: &str) -> Result<Self> {
        let symbols: Vec<ChainSymbol> = s.split_whitespace().map(str::parse).collect::<Result<_>>()?;
        let max = |k: Kind| symbols.iter().filter(|x| x.kind == k).map(|x| x.index).max().unwrap_or(0);
        Self::new(symbols.clone(), max(Kind::Delta), max(Kind::Eps))
    }

    /// Parses within the ambient shape of `params`, requiring a full chain.
    pub fn parse_full(s: &str, params: &PairParams) -> Result<Self> {
        let symbols: Vec<ChainSymbol> = s.split_whitespace().map(str::parse).collect::<Result<_>>()?;
        let chain = Self::new(symbols, params.m(), params.n())?;
        if !chain.is_full() {
            return Err(Error::InvalidChain(format!(
                "chain has {} symbols, a full chain for {params} has {}",
                chain.len(),
                params.size()
            )));
        }
        Ok(chain)
    }

    /// The chain with the given kinds and canonical indices: δ's and ε's
    /// numbered `1, 2, …` in order of appearance.
    pub fn canonical(kinds: &[Kind]) -> Self {
        let (mut d, mut e) = (0, 0);
        let symbols = kinds
            .iter()
            .map(|k| match k {
                Kind::Delta => {
                    d += 1;
                    ChainSymbol::delta(d)
                }
                Kind::Eps => {
                    e += 1;
                    ChainSymbol::eps(e)
                }
            })
            .collect();
        Self {
            symbols,
            n_delta: d,
            n_eps: e,
        }
    }

    pub fn symbols(&self) -> &[ChainSymbol] {
        &self.symbols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_delta, self.n_eps)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n_delta + self.n_eps
    }

    pub fn kinds(&self) -> Vec<Kind> {
        self.symbols.iter().map(|s| s.kind).collect()
    }

    pub fn weight_of(&self, s: &ChainSymbol) -> HWeight {
        s.weight(self.n_delta, self.n_eps)
    }

    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.symbols.reverse();
        c
    }

    /// Swaps the neighbors realizing `refl`; fails unless `refl.left` sits
    /// immediately before `refl.right`.
    pub fn swap(&self, refl: &SimpleReflection) -> Result<Self> {
        let pos = self.symbols.iter().position(|s| *s == refl.left);
        match pos {
            Some(i) if i + 1 < self.len() && self.symbols[i + 1] == refl.right => {
                let mut c = self.clone();
                c.symbols.swap(i, i + 1);
                Ok(c)
            }
            _ => Err(Error::InvalidChain(format!(
                "{}−{} is not a simple root of {self}",
                refl.left, refl.right
            ))),
        }
    }
}

impl fmt::Display for DeltaEpsChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The simple reflection at `left − right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleReflection {
    pub left: ChainSymbol,
    pub right: ChainSymbol,
    pub parity: Parity,
}

impl SimpleReflection {
    pub fn new(left: ChainSymbol, right: ChainSymbol) -> Self {
        let parity = if left.kind == right.kind { Parity::Even } else { Parity::Odd };
        Self { left, right, parity }
    }

    pub fn root(&self, n_delta: usize, n_eps: usize) -> HWeight {
        self.left.weight(n_delta, n_eps).sub(&self.right.weight(n_delta, n_eps))
    }
}

impl fmt::Display for SimpleReflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r[{}-{}]", self.left, self.right)
    }
}

/// Steps in application order, starting from `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionChain {
    pub source: DeltaEpsChain,
    pub steps: Vec<SimpleReflection>,
}

impl ReflectionChain {
    /// Applies the steps as neighbor swaps, checking at each step that the
    /// root is simple in the current chain. Returns every intermediate chain.
    pub fn trajectory(&self) -> Result<Vec<DeltaEpsChain>> {
        let mut out = vec![self.source.clone()];
        for step in &self.steps {
            let next = out.last().unwrap().swap(step)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn target(&self) -> Result<DeltaEpsChain> {
        Ok(self.trajectory()?.pop().unwrap())
    }

    pub fn odd_count(&self) -> usize {
        self.steps.iter().filter(|s| s.parity == Parity::Odd).count()
    }
}

/// `Π(S_1…S_n) = {S_1 − S_2, …, S_{n−1} − S_n}`.
pub fn simple_system(chain: &DeltaEpsChain) -> Result<Vec<HWeight>> {
    if chain.len() < 2 {
        return Err(Error::InvalidChain(format!("chain of length {} has no simple roots", chain.len())));
    }
    Ok(chain
        .symbols
        .windows(2)
        .map(|w| chain.weight_of(&w[0]).sub(&chain.weight_of(&w[1])))
        .collect())
}

/// The prediction for `Π` after swapping positions `i, i+1` (0-based):
/// `α ↦ −α`, roots pairing nontrivially with `α` become `β + α`, all other
/// roots are unchanged.
pub fn swapped_simple_system(pi: &[HWeight], i: usize) -> Vec<HWeight> {
    let alpha = &pi[i];
    pi.iter()
        .enumerate()
        .map(|(k, beta)| {
            if k == i {
                alpha.neg()
            } else if !beta.pairing(alpha).is_zero() {
                beta.add(alpha)
            } else {
                beta.clone()
            }
        })
        .collect()
}

/// `δ_{p+1}…δ_{p+q} ε_{r+1}…ε_{r+s} δ_{q+1}…δ_p ε_{s+1}…ε_r ε_s…ε_1 δ_q…δ_1`.
///
/// The fourth segment has length `r − s`; this is the only reading that gives
/// a full chain with distinct symbols.
pub fn compatible_chain(params: &PairParams) -> DeltaEpsChain {
    let PairParams { p, q, r, s } = *params;
    let symbols = (p + 1..=p + q)
        .map(ChainSymbol::delta)
        .chain((r + 1..=r + s).map(ChainSymbol::eps))
        .chain((q + 1..=p).map(ChainSymbol::delta))
        .chain((s + 1..=r).map(ChainSymbol::eps))
        .chain((1..=s).rev().map(ChainSymbol::eps))
        .chain((1..=q).rev().map(ChainSymbol::delta))
        .collect();
    DeltaEpsChain {
        symbols,
        n_delta: p + q,
        n_eps: r + s,
    }
}

/// The bubble-sort chain reversing `chain`: move `S_1` to the end
/// (`S_1−S_2, …, S_1−S_n`), then `S_n` to the front (`S_{n−1}−S_n, …, S_2−S_n`),
/// then recurse on the interior.
pub fn reversal_chain(chain: &DeltaEpsChain) -> ReflectionChain {
    let mut steps = Vec::new();
    let s = &chain.symbols;
    let (mut lo, mut hi) = (0usize, s.len());
    while hi > lo + 1 {
        let first = s[lo];
        for x in &s[lo + 1..hi] {
            steps.push(SimpleReflection::new(first, *x));
        }
        let last = s[hi - 1];
        for x in s[lo + 1..hi - 1].iter().rev() {
            steps.push(SimpleReflection::new(*x, last));
        }
        lo += 1;
        hi -= 1;
    }
    ReflectionChain {
        source: chain.clone(),
        steps,
    }
}

/// Even: the orthogonal reflection. Odd: `w` if `⟨w,α⟩ = 0`, else `w − α`.
pub fn apply_reflection(w: &HWeight, refl: &SimpleReflection) -> Result<HWeight> {
    let alpha = refl.root(w.delta.len(), w.eps.len());
    let aa = alpha.pairing(&alpha);
    let wa = w.pairing(&alpha);
    match refl.parity {
        Parity::Even => {
            if aa.is_zero() {
                return Err(Error::EvenReflectionAtIsotropicRoot(alpha.to_string()));
            }
            Ok(w.sub(&alpha.scale(&(int(2) * wa / aa))))
        }
        Parity::Odd => Ok(if wa.is_zero() { w.clone() } else { w.sub(&alpha) }),
    }
}

/// Composition in application order.
pub fn apply_chain(w: &HWeight, rc: &ReflectionChain) -> Result<HWeight> {
    rc.steps.iter().try_fold(w.clone(), |acc, s| apply_reflection(&acc, s))
}

/// Applies only the even steps, i.e. the chain with odd reflections dropped.
pub fn even_only_action(w: &HWeight, rc: &ReflectionChain) -> Result<HWeight> {
    rc.steps
        .iter()
        .filter(|s| s.parity == Parity::Even)
        .try_fold(w.clone(), |acc, s| apply_reflection(&acc, s))
}

/// Kinds string equals its reverse.
pub fn is_palindrome(chain: &DeltaEpsChain) -> bool {
    let k = chain.kinds();
    k.iter().eq(k.iter().rev())
}

/// `−Σ_i δ_i` in the ambient shape.
pub fn minus_sum_delta(n_delta: usize, n_eps: usize) -> HWeight {
    let mut w = HWeight::zero(n_delta, n_eps);
    for x in &mut w.delta {
        *x = int(-1);
    }
    w
}

/// `±S_a` for every symbol, all `2^n` signed sums `Σ ±S_a`, and `−Σ δ_i`.
pub fn test_family(n_delta: usize, n_eps: usize) -> Vec<HWeight> {
    let units: Vec<HWeight> = (1..=n_delta)
        .map(|i| HWeight::delta_unit(n_delta, n_eps, i))
        .chain((1..=n_eps).map(|j| HWeight::eps_unit(n_delta, n_eps, j)))
        .collect();
    let n = units.len();
    let mut out: Vec<HWeight> = units.iter().flat_map(|u| [u.clone(), u.neg()]).collect();
    for mask in 0u32..(1u32 << n) {
        let w = units.iter().enumerate().fold(HWeight::zero(n_delta, n_eps), |acc, (k, u)| {
            if mask & (1 << k) != 0 {
                acc.sub(u)
            } else {
                acc.add(u)
            }
        });
        out.push(w);
    }
    out.push(minus_sum_delta(n_delta, n_eps));
    out
}

/// All kinds strings of the given length.
pub fn kinds_patterns(len: usize) -> Vec<Vec<Kind>> {
    (0u32..(1u32 << len))
        .map(|mask| {
            (0..len)
                .map(|k| if mask & (1 << (len - 1 - k)) != 0 { Kind::Eps } else { Kind::Delta })
                .collect()
        })
        .collect()
}

/// Comparison of the full reversal action with its even-only part.
#[derive(Clone, Debug)]
pub struct SelfDualityComparison {
    pub chain: DeltaEpsChain,
    pub palindrome: bool,
    /// Full and even-only actions agree on the whole test family.
    pub agree_on_family: bool,
    /// They disagree at `−Σ δ_i`.
    pub witnessed_by_minus_sum_delta: bool,
}

pub fn compare_reversal_actions(chain: &DeltaEpsChain) -> Result<SelfDualityComparison> {
    let rc = reversal_chain(chain);
    let (nd, ne) = chain.shape();
    let mut agree = true;
    for w in test_family(nd, ne) {
        if apply_chain(&w, &rc)? != even_only_action(&w, &rc)? {
            agree = false;
            break;
        }
    }
    let msd = minus_sum_delta(nd, ne);
    let witnessed = apply_chain(&msd, &rc)? != even_only_action(&msd, &rc)?;
    Ok(SelfDualityComparison {
        chain: chain.clone(),
        palindrome: is_palindrome(chain),
        agree_on_family: agree,
        witnessed_by_minus_sum_delta: witnessed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: usize, q: usize, r: usize, s: usize) -> PairParams {
        PairParams::new(p, q, r, s).unwrap()
    }

    #[test]
    fn compatible_chain_examples() {
        assert_eq!(compatible_chain(&pp(1, 1, 1, 1)).to_string(), "d2 e2 e1 d1");
        assert_eq!(compatible_chain(&pp(2, 1, 1, 1)).to_string(), "d3 e2 d2 e1 d1");
        assert_eq!(compatible_chain(&pp(2, 1, 2, 1)).to_string(), "d3 e3 d2 e2 e1 d1");
        for params in PairParams::grid(8) {
            let c = compatible_chain(&params);
            assert!(c.is_full(), "{params}");
            DeltaEpsChain::new(c.symbols.clone(), params.m(), params.n()).unwrap();
            let pal = params.p == params.q || params.r == params.s;
            assert_eq!(is_palindrome(&c), pal, "{params}: {c}");
        }
    }

    #[test]
    fn simple_system_examples() {
        let c = DeltaEpsChain::parse("d1 e1").unwrap();
        assert_eq!(simple_system(&c).unwrap(), vec![HWeight::from_ints(&[1], &[-1])]);
        let c = compatible_chain(&pp(1, 1, 1, 1));
        let pi: Vec<String> = simple_system(&c).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(pi, vec!["d2-e2", "-e1+e2", "-d1+e1"]);
        assert!(simple_system(&DeltaEpsChain::parse("d1").unwrap()).is_err());
    }

    #[test]
    fn reversal_examples() {
        let c = DeltaEpsChain::parse("d1 d2").unwrap();
        let rc = reversal_chain(&c);
        assert_eq!(rc.steps, vec![SimpleReflection::new(ChainSymbol::delta(1), ChainSymbol::delta(2))]);

        let c = DeltaEpsChain::parse("d1 d2 d3").unwrap();
        let rc = reversal_chain(&c);
        let steps: Vec<String> = rc.steps.iter().map(ToString::to_string).collect();
        assert_eq!(steps, vec!["r[d1-d2]", "r[d1-d3]", "r[d2-d3]"]);
        assert_eq!(rc.target().unwrap(), c.reversed());

        let rc = reversal_chain(&compatible_chain(&pp(1, 1, 1, 1)));
        assert_eq!((rc.steps.len(), rc.odd_count()), (6, 4));
    }

    #[test]
    fn reversal_on_all_short_patterns() {
        for len in 1..=6 {
            for kinds in kinds_patterns(len) {
                let c = DeltaEpsChain::canonical(&kinds);
                let rc = reversal_chain(&c);
                assert_eq!(rc.steps.len(), len * (len - 1) / 2);
                assert_eq!(rc.target().unwrap(), c.reversed());
                if len >= 2 {
                    let pi = simple_system(&c).unwrap();
                    let mut neg: Vec<HWeight> = pi.iter().map(HWeight::neg).collect();
                    neg.reverse();
                    assert_eq!(simple_system(&c.reversed()).unwrap(), neg);
                }
            }
        }
    }

    #[test]
    fn swaps_follow_the_case_analysis() {
        for len in 2..=5 {
            for kinds in kinds_patterns(len) {
                let c = DeltaEpsChain::canonical(&kinds);
                let pi = simple_system(&c).unwrap();
                for i in 0..len - 1 {
                    let refl = SimpleReflection::new(c.symbols[i], c.symbols[i + 1]);
                    let swapped = c.swap(&refl).unwrap();
                    assert_eq!(simple_system(&swapped).unwrap(), swapped_simple_system(&pi, i), "{c} at {i}");
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let d1 = HWeight::from_ints(&[1, 0], &[]);
        let r = SimpleReflection::new(ChainSymbol::delta(1), ChainSymbol::delta(2));
        assert_eq!(apply_reflection(&d1, &r).unwrap(), HWeight::from_ints(&[0, 1], &[]));

        let odd = SimpleReflection::new(ChainSymbol::delta(1), ChainSymbol::eps(1));
        let w = HWeight::from_ints(&[1], &[-1]); // ⟨w, δ_1 − ε_1⟩ = 1 − 1 = 0
        assert_eq!(apply_reflection(&w, &odd).unwrap(), w);
        let d1 = HWeight::from_ints(&[1], &[0]);
        assert_eq!(apply_reflection(&d1, &odd).unwrap(), HWeight::from_ints(&[0], &[1]));

        let w = HWeight::from_ints(&[2, -1], &[3]);
        let empty = ReflectionChain {
            source: DeltaEpsChain::parse("d1 d2 e1").unwrap(),
            steps: vec![],
        };
        assert_eq!(apply_chain(&w, &empty).unwrap(), w);
    }

    #[test]
    fn spherical_weight_is_reversed() {
        let params = pp(1, 1, 1, 1);
        let rc = reversal_chain(&compatible_chain(&params));
        let lam = HWeight::from_ints(&[-2, 2], &[0, 0]);
        assert_eq!(apply_chain(&lam, &rc).unwrap(), lam.neg());
    }

    #[test]
    fn odd_steps_act_effectively_on_minus_sum_delta() {
        let c = DeltaEpsChain::parse("d1 e1 d2").unwrap();
        let rc = reversal_chain(&c);
        let mut w = minus_sum_delta(2, 1);
        for step in &rc.steps {
            if step.parity == Parity::Odd {
                assert!(!w.pairing(&step.root(2, 1)).is_zero(), "{step} at {w}");
            }
            w = apply_reflection(&w, step).unwrap();
        }
    }

    #[test]
    fn palindrome_criterion_examples() {
        let pal = compare_reversal_actions(&DeltaEpsChain::parse("d1 e1 d2").unwrap()).unwrap();
        assert!(pal.palindrome && pal.agree_on_family);
        let pal = compare_reversal_actions(&compatible_chain(&pp(1, 1, 1, 1))).unwrap();
        assert!(pal.palindrome && pal.agree_on_family);
        let non = compare_reversal_actions(&DeltaEpsChain::parse("d1 d2 e1").unwrap()).unwrap();
        assert!(!non.palindrome && !non.agree_on_family && non.witnessed_by_minus_sum_delta);
    }

    #[test]
    fn parse_errors() {
        assert!(DeltaEpsChain::parse("d1 d1").is_err());
        assert!(DeltaEpsChain::parse("x1").is_err());
        assert!(DeltaEpsChain::parse("d0").is_err());
        assert!(DeltaEpsChain::parse_full("d1 e1", &pp(1, 1, 1, 1)).is_err());
        let c = DeltaEpsChain::parse("d1 e1").unwrap();
        assert!(c.swap(&SimpleReflection::new(ChainSymbol::eps(1), ChainSymbol::delta(1))).is_err());
    }
}
