//! Finite bounded lattices.
//!
//! A [`FiniteLattice`] is stored as its full order relation over opaque,
//! string-named elements together with precomputed meet/join tables and the
//! `β`/`α` families. Elements are addressed through the [`Elem`] handle, an
//! index into one specific lattice; the order never depends on element names.
//!
//! For finite lattices distributivity and complete distributivity coincide,
//! so [`FiniteLattice::is_distributive`] checks the binary law
//! `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` over all triples.
//!
//! The "wedge below" relation `a ≺ b` (for every `D` with `b ≤ ⋁D` some
//! `d ∈ D` has `a ≤ d`) is evaluated through its closed form: the worst set
//! `D` is `{x : a ≰ x}`, hence `a ≺ b` iff `⋁{x : a ≰ x} ≱ b`. Dually
//! `a ≺ᵒᵖ b` iff `⋀{x : x ≰ b} ≰ a`. The subset-quantified definitions live
//! in [`crate::oracle`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Largest supported lattice size. Element families are stored as `u64` bitsets.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("lattice has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not reflexive: missing `{0}` <= `{0}`")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}` (cycle)")]
    Cycle(String, String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{0}` and `{1}` have no least upper bound")]
    NoJoin(String, String),
    #[error("`{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),
    #[error("lattice is not distributive: `{0}` /\\ (`{1}` \\/ `{2}`) differs from (`{0}` /\\ `{1}`) \\/ (`{0}` /\\ `{2}`)")]
    NotDistributive(String, String, String),
    #[error("unknown built-in lattice `{0}`")]
    UnknownBuiltin(String),
}

/// Handle to an element of one particular [`FiniteLattice`].
///
/// The derived `Ord` follows the internal index and carries no order-theoretic
/// meaning; use [`FiniteLattice::leq`] for the lattice order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(u8);

impl Elem {
    pub(crate) fn from_index(i: usize) -> Elem {
        debug_assert!(i < MAX_ELEMENTS);
        Elem(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of elements of a lattice, stored as a bitset over element indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementFamily(u64);

impl ElementFamily {
    pub const EMPTY: ElementFamily = ElementFamily(0);

    pub fn from_elems<I: IntoIterator<Item = Elem>>(elems: I) -> Self {
        ElementFamily(elems.into_iter().fold(0, |acc, e| acc | (1 << e.index())))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 >> e.index() & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        self.0 |= 1 << e.index();
    }

    pub fn union(self, other: Self) -> Self {
        ElementFamily(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementFamily(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Elem> {
        (0..MAX_ELEMENTS)
            .filter(move |i| self.0 >> i & 1 == 1)
            .map(Elem::from_index)
    }
}

impl fmt::Debug for ElementFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.index())).finish()
    }
}

/// A finite bounded lattice, immutable after construction.
#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // up[a] has bit b set iff a <= b; down[b] has bit a set iff a <= b.
    up: Vec<u64>,
    down: Vec<u64>,
    meet: Vec<u8>,
    join: Vec<u8>,
    bottom: usize,
    top: usize,
    distributive: Option<(usize, usize, usize)>,
    beta: Vec<u64>,
    alpha: Vec<u64>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Validates an explicitly given order relation and builds the lattice.
///
/// The relation must already be a partial order: it is not closed
/// reflexively or transitively (see [`FiniteLattice::from_covers`] for that).
pub fn verify_lattice<S: AsRef<str>>(
    elements: &[S],
    relation: &[(S, S)],
) -> Result<FiniteLattice, LatticeError> {
    let names = collect_names(elements)?;
    let index = name_index(&names)?;
    let n = names.len();
    let mut up = vec![0u64; n];
    for (a, b) in relation {
        let (a, b) = (lookup(&index, a.as_ref())?, lookup(&index, b.as_ref())?);
        up[a] |= 1 << b;
    }
    FiniteLattice::from_up_sets(names, index, up)
}

fn collect_names<S: AsRef<str>>(elements: &[S]) -> Result<Vec<String>, LatticeError> {
    if elements.is_empty() {
        return Err(LatticeError::Empty);
    }
    if elements.len() > MAX_ELEMENTS {
        return Err(LatticeError::TooLarge(elements.len()));
    }
    Ok(elements.iter().map(|s| s.as_ref().to_string()).collect())
}

fn name_index(names: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize, LatticeError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

impl FiniteLattice {
    /// Builds a lattice from a covering relation (or any generating relation):
    /// the reflexive-transitive closure is taken before validation.
    pub fn from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<FiniteLattice, LatticeError> {
        let names = collect_names(elements)?;
        let index = name_index(&names)?;
        let n = names.len();
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (a, b) in covers {
            let (a, b) = (lookup(&index, a.as_ref())?, lookup(&index, b.as_ref())?);
            up[a] |= 1 << b;
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        FiniteLattice::from_up_sets(names, index, up)
    }

    /// Builds a lattice from a full `leq` matrix indexed like `names`.
    pub fn from_leq_matrix<S: AsRef<str>>(
        names: &[S],
        leq: &[Vec<bool>],
    ) -> Result<FiniteLattice, LatticeError> {
        let names = collect_names(names)?;
        let index = name_index(&names)?;
        let up = leq
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| if b { acc | 1 << j } else { acc })
            })
            .collect();
        FiniteLattice::from_up_sets(names, index, up)
    }

    fn from_up_sets(
        names: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<u64>,
    ) -> Result<FiniteLattice, LatticeError> {
        let n = names.len();
        for a in 0..n {
            if up[a] >> a & 1 == 0 {
                return Err(LatticeError::NotReflexive(names[a].clone()));
            }
        }
        for a in 0..n {
            for b in bits(up[a]) {
                if b != a && up[b] >> a & 1 == 1 {
                    return Err(LatticeError::Cycle(names[a].clone(), names[b].clone()));
                }
            }
        }
        for a in 0..n {
            for b in bits(up[a]) {
                let missing = up[b] & !up[a];
                if missing != 0 {
                    let c = missing.trailing_zeros() as usize;
                    return Err(LatticeError::NotTransitive(
                        names[a].clone(),
                        names[b].clone(),
                        names[c].clone(),
                    ));
                }
            }
        }
        let mut down = vec![0u64; n];
        for a in 0..n {
            for b in bits(up[a]) {
                down[b] |= 1 << a;
            }
        }

        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = down[a] & down[b];
                let glb = bits(lower).find(|&x| lower & !down[x] == 0);
                let upper = up[a] & up[b];
                let lub = bits(upper).find(|&x| upper & !up[x] == 0);
                match (glb, lub) {
                    (Some(m), Some(j)) => {
                        meet[a * n + b] = m as u8;
                        join[a * n + b] = j as u8;
                    }
                    (None, _) => {
                        return Err(LatticeError::NoMeet(names[a].clone(), names[b].clone()))
                    }
                    (_, None) => {
                        return Err(LatticeError::NoJoin(names[a].clone(), names[b].clone()))
                    }
                }
            }
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let bottom = (0..n).find(|&x| up[x] == all).expect("finite lattice has a bottom");
        let top = (0..n).find(|&x| down[x] == all).expect("finite lattice has a top");

        let mut lat = FiniteLattice {
            names,
            index,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            distributive: None,
            beta: Vec::new(),
            alpha: Vec::new(),
        };
        lat.distributive = lat.find_distributivity_violation();
        lat.beta = (0..n).map(|b| lat.beta_bits(b, all)).collect();
        lat.alpha = (0..n).map(|a| lat.alpha_bits(a, all)).collect();
        Ok(lat)
    }

    fn find_distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.m(x, self.j(y, z));
                    let rhs = self.j(self.m(x, y), self.m(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    fn j(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    fn join_mask(&self, mask: u64) -> usize {
        bits(mask).fold(self.bottom, |acc, x| self.j(acc, x))
    }

    fn meet_mask(&self, mask: u64) -> usize {
        bits(mask).fold(self.top, |acc, x| self.m(acc, x))
    }

    // beta(b) = { a : join{x : a !<= x} !>= b }
    fn beta_bits(&self, b: usize, all: u64) -> u64 {
        (0..self.len())
            .filter(|&a| {
                let worst = self.join_mask(all & !self.up[a]);
                self.up[b] >> worst & 1 == 0
            })
            .fold(0, |acc, a| acc | 1 << a)
    }

    // alpha(a) = { b : meet{x : x !<= b} !<= a }
    fn alpha_bits(&self, a: usize, all: u64) -> u64 {
        (0..self.len())
            .filter(|&b| {
                let worst = self.meet_mask(all & !self.down[b]);
                self.up[worst] >> a & 1 == 0
            })
            .fold(0, |acc, b| acc | 1 << b)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(Elem::from_index)
    }

    pub fn elem_at(&self, i: usize) -> Option<Elem> {
        (i < self.len()).then(|| Elem::from_index(i))
    }

    pub fn elem(&self, name: &str) -> Result<Elem, LatticeError> {
        lookup(&self.index, name).map(Elem::from_index)
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bottom(&self) -> Elem {
        Elem::from_index(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem::from_index(self.top)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.index()] >> b.index() & 1 == 1
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.index() * self.len() + b.index()])
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.index() * self.len() + b.index()])
    }

    /// Greatest lower bound of a family; the empty meet is `⊤`.
    pub fn meet_family<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Least upper bound of a family; the empty join is `⊥`.
    pub fn join_family<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// [`meet_family`](Self::meet_family) over element names.
    pub fn meet_named<S: AsRef<str>>(&self, xs: &[S]) -> Result<Elem, LatticeError> {
        let elems = xs
            .iter()
            .map(|s| self.elem(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.meet_family(elems))
    }

    /// [`join_family`](Self::join_family) over element names.
    pub fn join_named<S: AsRef<str>>(&self, xs: &[S]) -> Result<Elem, LatticeError> {
        let elems = xs
            .iter()
            .map(|s| self.elem(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.join_family(elems))
    }

    pub fn up_set(&self, a: Elem) -> ElementFamily {
        ElementFamily(self.up[a.index()])
    }

    pub fn down_set(&self, a: Elem) -> ElementFamily {
        ElementFamily(self.down[a.index()])
    }

    pub fn all_elements(&self) -> ElementFamily {
        ElementFamily::from_elems(self.elements())
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive.is_none()
    }

    /// A triple `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        self.distributive
            .map(|(x, y, z)| (Elem::from_index(x), Elem::from_index(y), Elem::from_index(z)))
    }

    pub fn require_distributive(&self) -> Result<(), LatticeError> {
        match self.distributivity_witness() {
            None => Ok(()),
            Some((x, y, z)) => Err(LatticeError::NotDistributive(
                self.name(x).into(),
                self.name(y).into(),
                self.name(z).into(),
            )),
        }
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// `a ≺ b`.
    pub fn wedge_below(&self, a: Elem, b: Elem) -> bool {
        self.beta[b.index()] >> a.index() & 1 == 1
    }

    /// `a ≺ᵒᵖ b`.
    pub fn op_wedge_below(&self, a: Elem, b: Elem) -> bool {
        self.alpha[a.index()] >> b.index() & 1 == 1
    }

    /// `β(b) = {a : a ≺ b}`.
    pub fn beta(&self, b: Elem) -> ElementFamily {
        ElementFamily(self.beta[b.index()])
    }

    /// `α(a) = {b : a ≺ᵒᵖ b}`.
    pub fn alpha(&self, a: Elem) -> ElementFamily {
        ElementFamily(self.alpha[a.index()])
    }

    /// True iff `β(a ∧ b) = β(a) ∩ β(b)` for every pair.
    pub fn check_beta_meet_hypothesis(&self) -> bool {
        self.beta_meet_witness().is_none()
    }

    pub fn beta_meet_witness(&self) -> Option<(Elem, Elem)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.beta(self.meet(a, b)) != self.beta(a).intersection(self.beta(b)))
    }

    /// The covering pairs `(lower, upper)` of the order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b)
                    && !self
                        .elements()
                        .any(|c| self.lt(a, c) && self.lt(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The finite chain with `n` elements `0 < 1/(n-1) < ... < 1`.
    pub fn chain(n: usize) -> Result<FiniteLattice, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let names: Vec<String> = (0..n)
            .map(|k| match (k, n - 1) {
                (0, _) => "0".to_string(),
                (k, d) if k == d => "1".to_string(),
                (k, d) => {
                    let g = gcd(k, d);
                    format!("{}/{}", k / g, d / g)
                }
            })
            .collect();
        let covers: Vec<(String, String)> = names
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        FiniteLattice::from_covers(&names, &covers)
    }

    /// The two-element chain, shared between all crisp domains.
    pub fn two() -> Arc<FiniteLattice> {
        static TWO: OnceLock<Arc<FiniteLattice>> = OnceLock::new();
        TWO.get_or_init(|| Arc::new(FiniteLattice::chain(2).expect("chain of two")))
            .clone()
    }

    /// The 2×2 Boolean algebra `{bot, p, q, top}`.
    pub fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "p", "q", "top"],
            &[("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")],
        )
        .expect("diamond is a lattice")
    }

    /// The pentagon `N5`: `bot < a < b < top`, `bot < c < top`.
    pub fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "a", "b", "c", "top"],
            &[("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        )
        .expect("N5 is a lattice")
    }

    /// The diamond `M3` with three atoms.
    pub fn m3() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "a", "b", "c", "top"],
            &[
                ("bot", "a"),
                ("bot", "b"),
                ("bot", "c"),
                ("a", "top"),
                ("b", "top"),
                ("c", "top"),
            ],
        )
        .expect("M3 is a lattice")
    }

    /// The Boolean algebra of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> Result<FiniteLattice, LatticeError> {
        if 1usize << k > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(1 << k));
        }
        let antichain = vec![vec![false; k]; k]
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row[i] = true;
                row
            })
            .collect::<Vec<_>>();
        FiniteLattice::downsets_of(&antichain)
    }

    /// The lattice of downsets of a finite poset given by its `leq` matrix,
    /// ordered by inclusion. Every finite distributive lattice arises this way.
    pub fn downsets_of(poset: &[Vec<bool>]) -> Result<FiniteLattice, LatticeError> {
        let n = poset.len();
        let downsets: Vec<u32> = (0u32..1 << n)
            .filter(|&s| {
                (0..n).all(|y| {
                    s >> y & 1 == 0 || (0..n).all(|x| !poset[x][y] || s >> x & 1 == 1)
                })
            })
            .collect();
        if downsets.len() > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(downsets.len()));
        }
        let names: Vec<String> = downsets
            .iter()
            .map(|&s| {
                let pts: Vec<String> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        let leq: Vec<Vec<bool>> = downsets
            .iter()
            .map(|&a| downsets.iter().map(|&b| a & !b == 0).collect())
            .collect();
        FiniteLattice::from_leq_matrix(&names, &leq)
    }

    /// Cartesian product with the componentwise order.
    pub fn product(&self, other: &FiniteLattice) -> Result<FiniteLattice, LatticeError> {
        let size = self.len() * other.len();
        if size > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(size));
        }
        let pairs: Vec<(Elem, Elem)> = self
            .elements()
            .flat_map(|a| other.elements().map(move |b| (a, b)))
            .collect();
        let names: Vec<String> = pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", self.name(a), other.name(b)))
            .collect();
        let leq: Vec<Vec<bool>> = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .map(|&(c, d)| self.leq(a, c) && other.leq(b, d))
                    .collect()
            })
            .collect();
        FiniteLattice::from_leq_matrix(&names, &leq)
    }

    /// Resolves a built-in lattice name: `2`, `chainN`, `diamond`, `N5`/`pentagon`,
    /// `M3`, `booleanK`.
    pub fn builtin(name: &str) -> Result<FiniteLattice, LatticeError> {
        let unknown = || LatticeError::UnknownBuiltin(name.to_string());
        match name {
            "2" => FiniteLattice::chain(2),
            "diamond" => Ok(FiniteLattice::diamond()),
            "N5" | "pentagon" => Ok(FiniteLattice::pentagon()),
            "M3" => Ok(FiniteLattice::m3()),
            _ => {
                if let Some(k) = name.strip_prefix("chain") {
                    FiniteLattice::chain(k.parse().map_err(|_| unknown())?)
                } else if let Some(k) = name.strip_prefix("boolean") {
                    FiniteLattice::boolean(k.parse().map_err(|_| unknown())?)
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
