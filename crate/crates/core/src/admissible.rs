//! Admissible subsets of `{Ω_i, y_i, x_i}` and their derived data.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Generator of the two-sided family `y_1, x_1, ..., y_n, x_n` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Y(usize),
    X(usize),
}

impl Gen {
    /// Position in the order `y1 < x1 < y2 < ...`.
    pub fn index(self) -> usize {
        match self {
            Gen::Y(i) => 2 * (i - 1),
            Gen::X(i) => 2 * (i - 1) + 1,
        }
    }

    pub fn from_index(k: usize) -> Gen {
        if k.is_multiple_of(2) {
            Gen::Y(k / 2 + 1)
        } else {
            Gen::X(k / 2 + 1)
        }
    }

    pub fn level(self) -> usize {
        match self {
            Gen::Y(i) | Gen::X(i) => i,
        }
    }

    pub fn lower(self) -> String {
        match self {
            Gen::Y(i) => format!("y{i}"),
            Gen::X(i) => format!("x{i}"),
        }
    }

    pub fn upper(self) -> String {
        match self {
            Gen::Y(i) => format!("Y{i}"),
            Gen::X(i) => format!("X{i}"),
        }
    }

    pub fn all(n: usize) -> Vec<Gen> {
        (0..2 * n).map(Gen::from_index).collect()
    }
}

pub fn lower_names(n: usize) -> Vec<String> {
    Gen::all(n).into_iter().map(Gen::lower).collect()
}

pub fn upper_names(n: usize) -> Vec<String> {
    Gen::all(n).into_iter().map(Gen::upper).collect()
}

/// Member of `{Ω_1, y_1, x_1, ..., Ω_n, y_n, x_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Y(usize),
    X(usize),
    Omega(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Y(i) => write!(f, "y{i}"),
            Element::X(i) => write!(f, "x{i}"),
            Element::Omega(i) => write!(f, "Omega{i}"),
        }
    }
}

impl FromStr for Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NotAdmissible(format!("unknown element {s:?}"));
        let s = s.trim();
        let (ctor, rest): (fn(usize) -> Element, &str) = if let Some(r) = s.strip_prefix("Omega") {
            (Element::Omega, r)
        } else if let Some(r) = s.strip_prefix('y') {
            (Element::Y, r)
        } else if let Some(r) = s.strip_prefix('x') {
            (Element::X, r)
        } else {
            return Err(bad());
        };
        let i: usize = rest.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(ctor(i))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Leading monomials of the quotient ideal: `y_i`, `x_i` or `y_i x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divisor {
    Y(usize),
    X(usize),
    YX(usize),
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisor::Y(i) => write!(f, "y{i}"),
            Divisor::X(i) => write!(f, "x{i}"),
            Divisor::YX(i) => write!(f, "y{i}*x{i}"),
        }
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Gen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.upper())
    }
}

/// An admissible set, stored as three membership vectors (index `i - 1`).
///
/// Ordering is lexicographic on `(omega_in, y_in, x_in)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleSet {
    n: usize,
    omega_in: Vec<bool>,
    y_in: Vec<bool>,
    x_in: Vec<bool>,
}

/// The defining biconditionals, with `Ω_0` counted as present.
pub fn is_admissible(y: &[bool], x: &[bool], omega: &[bool]) -> bool {
    (0..omega.len()).all(|k| {
        let prev = k == 0 || omega[k - 1];
        (y[k] || x[k]) == (omega[k] && prev)
    })
}

impl AdmissibleSet {
    pub fn new(y_in: Vec<bool>, x_in: Vec<bool>, omega_in: Vec<bool>) -> Result<Self> {
        let n = omega_in.len();
        if y_in.len() != n || x_in.len() != n {
            return Err(Error::NotAdmissible("membership vectors differ in length".into()));
        }
        let t = AdmissibleSet { n, omega_in, y_in, x_in };
        if !is_admissible(&t.y_in, &t.x_in, &t.omega_in) {
            return Err(Error::NotAdmissible(t.to_string()));
        }
        Ok(t)
    }

    pub fn empty(n: usize) -> Self {
        AdmissibleSet {
            n,
            omega_in: vec![false; n],
            y_in: vec![false; n],
            x_in: vec![false; n],
        }
    }

    /// Everything in.
    pub fn full(n: usize) -> Self {
        AdmissibleSet {
            n,
            omega_in: vec![true; n],
            y_in: vec![true; n],
            x_in: vec![true; n],
        }
    }

    pub fn from_elements(n: usize, elems: &[Element]) -> Result<Self> {
        let mut t = Self::empty(n);
        for e in elems {
            let (slot, i) = match *e {
                Element::Y(i) => (&mut t.y_in, i),
                Element::X(i) => (&mut t.x_in, i),
                Element::Omega(i) => (&mut t.omega_in, i),
            };
            if i == 0 || i > n {
                return Err(Error::NotAdmissible(format!("{e} outside 1..={n}")));
            }
            slot[i - 1] = true;
        }
        Self::new(t.y_in, t.x_in, t.omega_in)
    }

    pub fn parse(n: usize, names: &[impl AsRef<str>]) -> Result<Self> {
        let elems = names.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Element>>>()?;
        Self::from_elements(n, &elems)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based membership tests; `omega(0)` is true (Ω_0 = 0 lies in every ideal).
    pub fn y(&self, i: usize) -> bool {
        self.y_in[i - 1]
    }

    pub fn x(&self, i: usize) -> bool {
        self.x_in[i - 1]
    }

    pub fn omega(&self, i: usize) -> bool {
        i == 0 || self.omega_in[i - 1]
    }

    pub fn contains(&self, e: Element) -> bool {
        match e {
            Element::Y(i) => self.y(i),
            Element::X(i) => self.x(i),
            Element::Omega(i) => self.omega_in[i - 1],
        }
    }

    pub fn contains_gen(&self, g: Gen) -> bool {
        match g {
            Gen::Y(i) => self.y(i),
            Gen::X(i) => self.x(i),
        }
    }

    /// Members in the order `Ω_1, y_1, x_1, Ω_2, ...`.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            if self.omega_in[i - 1] {
                out.push(Element::Omega(i));
            }
            if self.y(i) {
                out.push(Element::Y(i));
            }
            if self.x(i) {
                out.push(Element::X(i));
            }
        }
        out
    }

    pub fn is_subset(&self, other: &AdmissibleSet) -> bool {
        self.n == other.n && self.elements().iter().all(|&e| other.contains(e))
    }

    /// `Ω_i ∈ T` with `y_i, x_i ∉ T`.
    pub fn omega_only(&self, i: usize) -> bool {
        self.omega_in[i - 1] && !self.y(i) && !self.x(i)
    }

    pub fn length(&self) -> usize {
        self.derived().s_t.len()
    }

    pub fn derived(&self) -> DerivedSets {
        derived_sets(self)
    }

    pub fn eta(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            if self.y(i) {
                out.push(Gen::Y(i));
            }
            if self.x(i) || self.omega_only(i) {
                out.push(Gen::X(i));
            }
        }
        out
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for AdmissibleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// All admissible sets for `n`, sorted, built level by level.
pub fn enumerate(n: usize) -> Vec<AdmissibleSet> {
    let mut partial = vec![AdmissibleSet::empty(0)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(partial.len() * 4);
        for t in &partial {
            let prev = t.n == 0 || t.omega_in[t.n - 1];
            let mut options = vec![(false, false, false), (false, false, true)];
            if prev {
                options = vec![(false, false, false), (true, false, true), (false, true, true), (true, true, true)];
            }
            for (y, x, o) in options {
                let mut s = t.clone();
                s.n += 1;
                s.y_in.push(y);
                s.x_in.push(x);
                s.omega_in.push(o);
                next.push(s);
            }
        }
        partial = next;
    }
    partial.sort();
    partial
}

/// Filter all `2^{3n}` subsets through the definition.
pub fn enumerate_brute_force(n: usize) -> Vec<AdmissibleSet> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (3 * n)) {
        let bit = |k: usize| mask >> k & 1 == 1;
        let y: Vec<bool> = (0..n).map(|i| bit(3 * i)).collect();
        let x: Vec<bool> = (0..n).map(|i| bit(3 * i + 1)).collect();
        let o: Vec<bool> = (0..n).map(|i| bit(3 * i + 2)).collect();
        if let Ok(t) = AdmissibleSet::new(y, x, o) {
            out.push(t);
        }
    }
    out.sort();
    out
}

/// Data read off an admissible set by literal application of the definitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSets {
    /// Leading monomials of the quotient ideal.
    pub a_t: Vec<Divisor>,
    pub s_t: Vec<Element>,
    pub n_t: Vec<Element>,
    /// Generators of the multiplicative set `E_T` (the members of `N_T`).
    pub e_t_generators: Vec<Element>,
    /// Generators `y_i ∉ T` of `𝒴_T`.
    pub y_t_generators: Vec<Gen>,
    /// Generators `Y_i` of `𝒰_T`.
    pub u_t_generators: Vec<Gen>,
    pub eta: Vec<Gen>,
}

pub fn derived_sets(t: &AdmissibleSet) -> DerivedSets {
    let n = t.n;
    let mut a_t = Vec::new();
    let mut s_t = Vec::new();
    let mut n_t = Vec::new();
    let mut y_t = Vec::new();
    for i in 1..=n {
        if t.y(i) {
            a_t.push(Divisor::Y(i));
            s_t.push(Element::Y(i));
        }
        if t.x(i) {
            a_t.push(Divisor::X(i));
            s_t.push(Element::X(i));
        }
        if t.omega_only(i) {
            a_t.push(Divisor::YX(i));
            s_t.push(Element::Omega(i));
        }
        if i == 1 {
            if !t.y(1) {
                n_t.push(Element::Y(1));
            }
            if !t.x(1) {
                n_t.push(Element::X(1));
            }
        } else {
            if !t.omega(i - 1) && !t.omega(i) {
                n_t.push(Element::Omega(i));
            }
            if t.omega(i - 1) && !t.y(i) {
                n_t.push(Element::Y(i));
            }
            if t.omega(i - 1) && !t.x(i) {
                n_t.push(Element::X(i));
            }
        }
        if !t.y(i) {
            y_t.push(Gen::Y(i));
        }
    }
    DerivedSets {
        a_t,
        s_t,
        e_t_generators: n_t.clone(),
        n_t,
        u_t_generators: y_t.clone(),
        y_t_generators: y_t,
        eta: t.eta(),
    }
}

/// `2n - length(T)`.
pub fn gk_dimension(t: &AdmissibleSet) -> usize {
    2 * t.n - t.length()
}

/// Number of standard monomials of degree `<= d` not divisible by any element of `𝒜_T`,
/// for `d = 0..=max_d`.
pub fn growth_counts(t: &AdmissibleSet, max_d: usize) -> Vec<u128> {
    // per level: the allowed (a, b) exponent patterns for y_i^a x_i^b
    let mut by_degree = vec![0u128; max_d + 1];
    by_degree[0] = 1;
    for i in 1..=t.n {
        let (ky, kx, kyx) = (t.y(i), t.x(i), t.omega_only(i));
        let mut level = vec![0u128; max_d + 1];
        for a in 0..=max_d {
            for b in 0..=max_d - a {
                let ok = !(ky && a > 0) && !(kx && b > 0) && !(kyx && a > 0 && b > 0);
                if ok {
                    level[a + b] += 1;
                }
            }
        }
        let mut next = vec![0u128; max_d + 1];
        for (d1, c1) in by_degree.iter().enumerate() {
            for (d2, c2) in level.iter().enumerate().take(max_d + 1 - d1) {
                next[d1 + d2] += c1 * c2;
            }
        }
        by_degree = next;
    }
    let mut acc = 0;
    by_degree
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}

/// Smallest `k` such that the `k`-th finite difference of `values` is a nonzero constant
/// and the next one vanishes; `None` if no such `k` is visible in the data.
pub fn polynomial_degree(values: &[u128]) -> Option<usize> {
    let mut row: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    let mut k = 0;
    while row.len() >= 2 {
        let next: Vec<i128> = row.windows(2).map(|w| w[1] - w[0]).collect();
        if next.iter().all(|&v| v == 0) {
            return row.iter().any(|&v| v != 0).then_some(k);
        }
        row = next;
        k += 1;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub counts: Vec<u128>,
    pub observed_degree: Option<usize>,
    pub expected_degree: usize,
    pub ok: bool,
}

pub fn growth_check(t: &AdmissibleSet, max_d: usize) -> GrowthReport {
    let counts = growth_counts(t, max_d);
    let observed_degree = polynomial_degree(&counts);
    let expected_degree = gk_dimension(t);
    GrowthReport {
        ok: observed_degree == Some(expected_degree),
        counts,
        observed_degree,
        expected_degree,
    }
}

pub fn eta_injectivity(n: usize) -> bool {
    let sets = enumerate(n);
    let images: BTreeSet<Vec<Gen>> = sets.iter().map(AdmissibleSet::eta).collect();
    images.len() == sets.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumLabel {
    #[serde(rename = "T")]
    pub t: AdmissibleSet,
    pub eta: Vec<Gen>,
    pub length: usize,
    pub gk_dim: usize,
}

impl StratumLabel {
    pub fn of(t: &AdmissibleSet) -> Self {
        StratumLabel {
            t: t.clone(),
            eta: t.eta(),
            length: t.length(),
            gk_dim: gk_dimension(t),
        }
    }
}

/// Admissible sets under inclusion, edges are covering relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumPoset {
    pub n: usize,
    pub nodes: Vec<StratumLabel>,
    pub edges: Vec<(usize, usize)>,
}

pub fn stratum_poset(n: usize) -> StratumPoset {
    let sets = enumerate(n);
    let below = |a: usize, b: usize| a != b && sets[a].is_subset(&sets[b]);
    let mut edges = Vec::new();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if below(a, b) && !(0..sets.len()).any(|c| below(a, c) && below(c, b)) {
                edges.push((a, b));
            }
        }
    }
    StratumPoset {
        n,
        nodes: sets.iter().map(StratumLabel::of).collect(),
        edges,
    }
}

impl StratumPoset {
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| !self.edges.iter().any(|&(_, b)| b == v)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| !self.edges.iter().any(|&(a, _)| a == v)).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph strata_n{} {{\n", self.n);
        for (k, node) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "  s{k} [label=\"{} | gk={}\"];\n",
                node.t, node.gk_dim
            ));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  s{a} -> s{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, names: &[&str]) -> AdmissibleSet {
        AdmissibleSet::parse(n, names).unwrap()
    }

    #[test]
    fn n1_sets() {
        let got = enumerate(1);
        let want = vec![
            set(1, &[]),
            set(1, &["y1", "Omega1"]),
            set(1, &["x1", "Omega1"]),
            set(1, &["y1", "x1", "Omega1"]),
        ];
        assert_eq!(got.len(), 4);
        for w in &want {
            assert!(got.contains(w));
        }
    }

    #[test]
    fn counts_and_brute_force() {
        for (n, c) in [(0, 1), (1, 4), (2, 14), (3, 48), (4, 164)] {
            let e = enumerate(n);
            assert_eq!(e.len(), c);
            assert_eq!(e, enumerate_brute_force(n));
        }
    }

    #[test]
    fn rejects_non_admissible() {
        assert!(AdmissibleSet::parse(1, &["y1"]).is_err());
        assert!(AdmissibleSet::parse(2, &["y2", "Omega2"]).is_err());
        assert!(AdmissibleSet::parse(2, &["Omega1", "Omega2"]).is_err());
    }

    #[test]
    fn derived_y1_omega1() {
        let t = set(2, &["y1", "Omega1"]);
        let d = t.derived();
        assert_eq!(d.a_t, vec![Divisor::Y(1)]);
        assert_eq!(d.s_t, vec![Element::Y(1)]);
        assert_eq!(d.n_t, vec![Element::X(1), Element::Y(2), Element::X(2)]);
        assert_eq!(d.eta, vec![Gen::Y(1)]);
    }

    #[test]
    fn derived_omega2() {
        let t = set(2, &["Omega2"]);
        let d = t.derived();
        assert_eq!(d.eta, vec![Gen::X(2)]);
        assert_eq!(d.s_t, vec![Element::Omega(2)]);
        assert_eq!(t.length(), 1);
        assert_eq!(gk_dimension(&t), 3);
    }

    #[test]
    fn derived_empty() {
        let d = AdmissibleSet::empty(2).derived();
        assert!(d.a_t.is_empty());
        assert!(d.eta.is_empty());
        assert_eq!(d.y_t_generators, vec![Gen::Y(1), Gen::Y(2)]);
    }

    #[test]
    fn growth_free_ring() {
        let c = growth_counts(&AdmissibleSet::empty(2), 8);
        for (d, &v) in c.iter().enumerate() {
            let d = d as u128;
            assert_eq!(v, (d + 1) * (d + 2) * (d + 3) * (d + 4) / 24);
        }
        assert!(growth_check(&AdmissibleSet::empty(2), 12).ok);
    }

    #[test]
    fn growth_full() {
        let t = AdmissibleSet::full(2);
        assert_eq!(gk_dimension(&t), 0);
        assert!(growth_counts(&t, 12).iter().all(|&c| c == 1));
        assert!(growth_check(&t, 12).ok);
    }

    #[test]
    fn eta_is_injective() {
        for n in 1..=4 {
            assert!(eta_injectivity(n));
        }
        let etas: BTreeSet<Vec<Gen>> = enumerate(1).iter().map(AdmissibleSet::eta).collect();
        let want: BTreeSet<Vec<Gen>> =
            [vec![], vec![Gen::Y(1)], vec![Gen::X(1)], vec![Gen::Y(1), Gen::X(1)]].into_iter().collect();
        assert_eq!(etas, want);
    }

    #[test]
    fn poset_n1() {
        let p = stratum_poset(1);
        let idx = |names: &[&str]| p.nodes.iter().position(|l| l.t == set(1, names)).unwrap();
        let (e, y, x, f) = (
            idx(&[]),
            idx(&["y1", "Omega1"]),
            idx(&["x1", "Omega1"]),
            idx(&["y1", "x1", "Omega1"]),
        );
        let mut want = vec![(e, y), (y, f), (e, x), (x, f)];
        want.sort();
        let mut got = p.edges.clone();
        got.sort();
        assert_eq!(got, want);
        assert_eq!(p.minimal(), vec![e]);
        for m in p.maximal() {
            assert_eq!(p.nodes[m].gk_dim, 0);
        }
        assert!(p.to_dot().contains("->"));
    }

    #[test]
    fn gen_indexing() {
        for k in 0..8 {
            assert_eq!(Gen::from_index(k).index(), k);
        }
        assert_eq!(Gen::X(2).lower(), "x2");
    }
}
