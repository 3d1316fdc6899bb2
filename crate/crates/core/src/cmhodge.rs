//! CM types and rank-one Hodge types with an action of a CM field, on the
//! combinatorial level: embeddings are indices `0..2g` with an involution `†`
//! standing for complex conjugation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// The embedding set `Σ` of a CM field with its involution `σ ↦ σ†`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMField {
    dagger: Vec<usize>,
}

impl CMField {
    pub fn new(dagger: Vec<usize>) -> Result<Self> {
        let n = dagger.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::Hodge(format!("embedding count {n} is not a positive even number")));
        }
        for (s, &d) in dagger.iter().enumerate() {
            if d >= n {
                return Err(Error::Hodge(format!("index {d} out of range 0..{n}")));
            }
            if d == s {
                return Err(Error::Hodge(format!("involution fixes {s}")));
            }
            if dagger[d] != s {
                return Err(Error::Hodge(format!("not an involution at {s}")));
            }
        }
        Ok(CMField { dagger })
    }

    /// `σ† = σ + g mod 2g`.
    pub fn standard(g: usize) -> Result<Self> {
        CMField::new((0..2 * g).map(|s| (s + g) % (2 * g)).collect())
    }

    /// Involution on `0..size` in cycle notation, e.g. `(0 2)(1 3)`.
    pub fn parse(cycles: &str, size: usize) -> Result<Self> {
        let mut dagger: Vec<Option<usize>> = vec![None; size];
        let mut rest = cycles.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Hodge(format!("malformed cycle notation at {rest:?}")))?;
            let idx: Vec<usize> = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Hodge(format!("bad index {t:?}"))))
                .collect::<Result<_>>()?;
            let [a, b] = idx[..] else {
                return Err(Error::Hodge(format!("cycle ({}) is not a transposition", body.0)));
            };
            for (x, y) in [(a, b), (b, a)] {
                let slot = dagger
                    .get_mut(x)
                    .ok_or_else(|| Error::Hodge(format!("index {x} out of range 0..{size}")))?;
                if slot.is_some() {
                    return Err(Error::Hodge(format!("index {x} appears twice")));
                }
                *slot = Some(y);
            }
            rest = body.1.trim_start();
        }
        let dagger = dagger
            .iter()
            .enumerate()
            .map(|(s, d)| d.ok_or_else(|| Error::Hodge(format!("involution fixes {s}"))))
            .collect::<Result<_>>()?;
        CMField::new(dagger)
    }

    pub fn size(&self) -> usize {
        self.dagger.len()
    }

    pub fn genus(&self) -> usize {
        self.dagger.len() / 2
    }

    pub fn dagger(&self, s: usize) -> usize {
        self.dagger[s]
    }

    pub fn dagger_set(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&s| self.dagger[s]).collect()
    }

    /// Pairs `{σ, σ†}` with `σ < σ†`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size()).filter(|&s| s < self.dagger[s]).map(|s| (s, self.dagger[s])).collect()
    }

    /// All `2^g` CM types.
    pub fn cm_types(&self) -> Vec<CMType> {
        let pairs = self.pairs();
        (0..1u64 << pairs.len())
            .map(|mask| {
                let phi = pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 0 { a } else { b })
                    .collect();
                CMType { field: self.clone(), phi }
            })
            .collect()
    }

    pub fn cycle_notation(&self) -> String {
        self.pairs().iter().map(|(a, b)| format!("({a} {b})")).collect()
    }
}

/// `Φ ⊂ Σ` with `Φ ∪ Φ† = Σ` and `Φ ∩ Φ† = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMType {
    field: CMField,
    phi: BTreeSet<usize>,
}

impl CMType {
    pub fn new(field: &CMField, phi: impl IntoIterator<Item = usize>) -> Result<Self> {
        let phi: BTreeSet<usize> = phi.into_iter().collect();
        if let Some(&s) = phi.iter().find(|&&s| s >= field.size()) {
            return Err(Error::Hodge(format!("index {s} out of range 0..{}", field.size())));
        }
        for (a, b) in field.pairs() {
            if phi.contains(&a) == phi.contains(&b) {
                return Err(Error::Hodge(format!(
                    "a CM type contains exactly one of {a} and {b}"
                )));
            }
        }
        Ok(CMType { field: field.clone(), phi })
    }

    pub fn field(&self) -> &CMField {
        &self.field
    }

    pub fn phi(&self) -> &BTreeSet<usize> {
        &self.phi
    }

    pub fn contains(&self, s: usize) -> bool {
        self.phi.contains(&s)
    }
}

impl fmt::Display for CMType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.phi.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Rank-one Hodge structure with `E`-action: one bidegree `(p, q)` per
/// embedding, all of total weight `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EHodgeType {
    field: CMField,
    weight: i64,
    bidegree: Vec<(i64, i64)>,
}

impl EHodgeType {
    pub fn new(field: &CMField, bidegree: Vec<(i64, i64)>) -> Result<Self> {
        if bidegree.len() != field.size() {
            return Err(Error::Hodge(format!(
                "{} bidegrees for {} embeddings",
                bidegree.len(),
                field.size()
            )));
        }
        let weight = bidegree[0].0 + bidegree[0].1;
        if let Some(s) = bidegree.iter().position(|&(p, q)| p + q != weight) {
            return Err(Error::Hodge(format!(
                "bidegree {:?} at {s} does not have weight {weight}",
                bidegree[s]
            )));
        }
        Ok(EHodgeType { field: field.clone(), weight, bidegree })
    }

    pub fn field(&self) -> &CMField {
        &self.field
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn bidegree(&self, s: usize) -> (i64, i64) {
        self.bidegree[s]
    }

    pub fn bidegrees(&self) -> &[(i64, i64)] {
        &self.bidegree
    }

    /// `max (p − q)`.
    pub fn level(&self) -> i64 {
        self.bidegree.iter().map(|&(p, q)| p - q).max().expect("nonempty")
    }

    /// `T = {σ : p(σ) ≥ ⌈n/2⌉}`.
    pub fn upper_set(&self) -> BTreeSet<usize> {
        let half = self.weight.div_euclid(2) + self.weight.rem_euclid(2);
        (0..self.bidegree.len()).filter(|&s| self.bidegree[s].0 >= half).collect()
    }

    /// `{σ : p(σ) > q(σ)}`: the upper set without its middle slots
    /// `(n/2, n/2)`, so equal to it for odd weight. A CM type can avoid a
    /// set only if the set meets its conjugate trivially, which always holds
    /// here for Hodge-symmetric types but fails for `T` once a middle slot
    /// and its conjugate are both present.
    pub fn strict_upper_set(&self) -> BTreeSet<usize> {
        (0..self.bidegree.len()).filter(|&s| self.bidegree[s].0 > self.bidegree[s].1).collect()
    }

    /// Complex conjugation exchanges `(p, q)` at `σ` with `(q, p)` at `σ†`.
    pub fn is_hodge_symmetric(&self) -> bool {
        (0..self.bidegree.len()).all(|s| {
            let (p, q) = self.bidegree[s];
            self.bidegree[self.field.dagger(s)] == (q, p)
        })
    }
}

impl fmt::Display for EHodgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> =
            self.bidegree.iter().enumerate().map(|(s, (p, q))| format!("{s}:({p},{q})")).collect();
        write!(f, "{}", slots.join(" "))
    }
}

/// `Φ ↦ (1,0)`, `Φ† ↦ (0,1)`.
pub fn cm_type_hodge(phi: &CMType) -> EHodgeType {
    let bidegree = (0..phi.field.size()).map(|s| if phi.contains(s) { (1, 0) } else { (0, 1) }).collect();
    EHodgeType { field: phi.field.clone(), weight: 1, bidegree }
}

/// `E_Φ ⊗_E V`: weight goes up by one and level down by one.
pub fn half_twist(v: &EHodgeType, phi: &CMType) -> Result<EHodgeType> {
    if v.field != phi.field {
        return Err(Error::Hodge("Hodge type and CM type live on different embedding sets".into()));
    }
    let m = v.level();
    if m < 1 {
        return Err(Error::Hodge(format!("level {m} < 1")));
    }
    let t = v.strict_upper_set();
    if let Some(s) = t.iter().find(|s| phi.contains(**s)) {
        return Err(Error::Hodge(format!("upper set meets the CM type at {s}")));
    }
    let bidegree = v
        .bidegree
        .iter()
        .enumerate()
        .map(|(s, &(p, q))| if phi.contains(s) { (p + 1, q) } else { (p, q + 1) })
        .collect();
    let w = EHodgeType { field: v.field.clone(), weight: v.weight + 1, bidegree };
    assert_eq!(w.level(), m - 1, "half twist lowers the level by one");
    Ok(w)
}

/// Lexicographically least CM type avoiding the strict upper set, when that
/// set meets its conjugate trivially.
pub fn find_compatible_cm_type(v: &EHodgeType) -> Option<CMType> {
    let t = v.strict_upper_set();
    let t_dag = v.field.dagger_set(&t);
    if !t.is_disjoint(&t_dag) {
        return None;
    }
    let phi = v
        .field
        .pairs()
        .into_iter()
        .map(|(a, b)| if t.contains(&a) { b } else { a })
        .collect();
    Some(CMType { field: v.field.clone(), phi })
}

/// Half twists down to level 0.
pub fn half_twist_ladder(v: &EHodgeType) -> Result<Vec<(CMType, EHodgeType)>> {
    let mut steps = Vec::new();
    let mut cur = v.clone();
    while cur.level() > 0 {
        let phi = find_compatible_cm_type(&cur).ok_or_else(|| {
            Error::Hodge(format!("upper set of {cur} meets its conjugate"))
        })?;
        let next = half_twist(&cur, &phi)?;
        steps.push((phi, next.clone()));
        cur = next;
    }
    Ok(steps)
}
