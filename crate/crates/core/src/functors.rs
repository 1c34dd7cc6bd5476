//! The translations `ω` (M-fuzzifying to `(L,M)`-fuzzy) and `ι` (back), and
//! checks of the laws relating them.
//!
//! Both directions need `β(a ∧ b) = β(a) ∩ β(b)` on `L`; a [`FunctorContext`]
//! can only be built for lattices that pass that check.

use std::sync::Arc;

use crate::constructions::{generate_from_subbase, Subbase};
use crate::convexity::{DomainKind, StructureMap};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyDomain, FuzzySet, PointSet, SpaceMap};
use crate::lattice::{Elem, FiniteLattice};
use crate::morphisms::{is_cpf, StructuredSpacePair, Verdict};

/// `L` and `M` with a certified `β`-meet hypothesis on `L`.
#[derive(Clone, Debug)]
pub struct FunctorContext {
    l: Arc<FiniteLattice>,
    m: Arc<FiniteLattice>,
}

impl FunctorContext {
    pub fn new(l: Arc<FiniteLattice>, m: Arc<FiniteLattice>) -> Result<Self> {
        if let Some((a, b)) = l.beta_meet_witness() {
            return Err(Error::Uncertified(format!(
                "L (at {} and {})",
                l.name(a),
                l.name(b)
            )));
        }
        Ok(FunctorContext { l, m })
    }

    pub fn l(&self) -> &Arc<FiniteLattice> {
        &self.l
    }

    pub fn m(&self) -> &Arc<FiniteLattice> {
        &self.m
    }

    fn require_crisp(&self, s: &StructureMap) -> Result<()> {
        if s.kind() != DomainKind::Crisp {
            return Err(Error::Mismatch("expected an M-fuzzifying structure on 2^X".into()));
        }
        if **s.m() != *self.m {
            return Err(Error::Mismatch("structure values lie outside M".into()));
        }
        Ok(())
    }

    fn require_fuzzy(&self, c: &StructureMap) -> Result<()> {
        if c.kind() != DomainKind::Fuzzy || **c.lattice() != *self.l {
            return Err(Error::Mismatch("expected an (L,M)-fuzzy structure on L^X".into()));
        }
        if **c.m() != *self.m {
            return Err(Error::Mismatch("structure values lie outside M".into()));
        }
        Ok(())
    }
}

/// `ω(𝒮)(A) = ⋀_{a ∈ L} 𝒮(A_[a])`.
pub fn omega(ctx: &FunctorContext, s: &StructureMap) -> Result<StructureMap> {
    ctx.require_crisp(s)?;
    let l = &ctx.l;
    let m = &ctx.m;
    let domain = FuzzyDomain::new(s.carrier().clone(), l.clone())?;
    let d = domain.clone();
    StructureMap::from_fn(DomainKind::Fuzzy, domain, m.clone(), move |code| {
        let a = d.decode(code);
        m.meet_family(l.elements().map(|c| s.degree_of(a.cut_lower(l, c))))
    })
}

/// `φ_𝒞(U) = ⋁_{a ∈ L} ⋁{𝒞(B) : B_[a] = U}`.
pub fn iota_subbase(ctx: &FunctorContext, c: &StructureMap) -> Result<Subbase> {
    ctx.require_fuzzy(c)?;
    let l = &ctx.l;
    let mut phi = StructureMap::crisp(c.carrier().clone(), ctx.m.clone());
    for (b, v) in c.support() {
        let set = c.domain().decode(b);
        for a in l.elements() {
            phi.raise(set.cut_lower(l, a).0, v);
        }
    }
    Ok(Subbase(phi))
}

/// The M-fuzzifying convexity generated by `φ_𝒞`.
pub fn iota(ctx: &FunctorContext, c: &StructureMap) -> Result<StructureMap> {
    Ok(generate_from_subbase(&iota_subbase(ctx, c)?))
}

/// M-fuzzifying CPF of `f` next to `(L,M)`-fuzzy CPF of `f` between the `ω` images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub fuzzifying: Verdict,
    pub omega: Verdict,
}

impl TransferReport {
    pub fn agree(&self) -> bool {
        self.fuzzifying.holds == self.omega.holds
    }
}

pub fn cpf_transfer(
    ctx: &FunctorContext,
    f: &SpaceMap,
    sx: &StructureMap,
    sy: &StructureMap,
) -> Result<TransferReport> {
    ctx.require_crisp(sx)?;
    ctx.require_crisp(sy)?;
    let fuzzifying = is_cpf(&StructuredSpacePair::new(sx.clone(), sy.clone(), f.clone())?);
    let omega = is_cpf(&StructuredSpacePair::new(
        omega(ctx, sx)?,
        omega(ctx, sy)?,
        f.clone(),
    )?);
    Ok(TransferReport { fuzzifying, omega })
}

/// Both sides of the hom-set transposition for `f : X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `f : (X, 𝒮) → (Y, ι(𝒟))` is M-fuzzifying CPF.
    pub left: bool,
    /// `f : (X, ω(𝒮)) → (Y, 𝒟)` is `(L,M)`-fuzzy CPF.
    pub right: bool,
}

impl AdjunctionReport {
    /// `left ⇒ right`.
    pub fn implication_holds(&self) -> bool {
        !self.left || self.right
    }

    /// `right ⇒ left`.
    pub fn converse_holds(&self) -> bool {
        !self.right || self.left
    }
}

pub fn adjunction_check(
    ctx: &FunctorContext,
    s: &StructureMap,
    c: &StructureMap,
    f: &SpaceMap,
) -> Result<AdjunctionReport> {
    ctx.require_crisp(s)?;
    ctx.require_fuzzy(c)?;
    let left = is_cpf(&StructuredSpacePair::new(s.clone(), iota(ctx, c)?, f.clone())?).holds;
    let right = is_cpf(&StructuredSpacePair::new(omega(ctx, s)?, c.clone(), f.clone())?).holds;
    Ok(AdjunctionReport { left, right })
}

/// `{A_[c] : b ∈ β(c)}`, without repeats.
pub fn lower_cut_family(l: &FiniteLattice, a: &FuzzySet, b: Elem) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = l
        .elements()
        .filter(|&c| l.beta(c).contains(b))
        .map(|c| a.cut_lower(l, c))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Any two members have a common superset in the family (vacuous when empty).
pub fn is_up_directed(family: &[PointSet]) -> bool {
    family.iter().all(|&u| {
        family
            .iter()
            .all(|&v| family.iter().any(|&w| u.union(v).is_subset(w)))
    })
}
