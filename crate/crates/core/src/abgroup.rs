//! Finitely generated abelian groups in invariant-factor form, homomorphisms
//! between them, and diagonalizable groups `(ℂ×)^m × F`.
//!
//! A diagonalizable group is never represented by complex numbers. It is
//! stored through its character group `ℤ^m ⊕ F̂`, and only its finite torsion
//! subgroups `Z[n] ≅ (ℤ/n)^m ⊕ ⊕ ℤ/gcd(fᵢ, n)` are ever materialized.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{cokernel_presentation, kernel_basis, reduce_mod, IntMatrix};

/// Element of a [`FGAbelianGroup`]: coordinates on the canonical generators,
/// free coordinates first.
pub type Element = Vec<BigInt>;

/// Coordinates of the canonical generators in some ambient product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientBasis {
    /// Order of each ambient cyclic factor, 0 for ℤ.
    pub moduli: Vec<BigInt>,
    /// `ambient × canonical`; column `j` is the ambient image of canonical generator `j`.
    pub to_ambient: IntMatrix,
    /// `canonical × ambient`; maps ambient coordinates to canonical ones.
    pub from_ambient: IntMatrix,
}

/// `ℤ^free_rank ⊕ ℤ/f₁ ⊕ … ⊕ ℤ/f_t` with `1 < f₁ | f₂ | … | f_t`.
#[derive(Clone, Debug)]
pub struct FGAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    basis: Option<AmbientBasis>,
}

/// Structural equality: the ambient basis is bookkeeping and does not take part.
impl PartialEq for FGAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FGAbelianGroup {}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        if let Some(f) = invariant_factors.iter().find(|f| **f <= BigInt::one()) {
            return Err(Error::invalid(format!("invariant factor {f} must exceed 1")));
        }
        for w in invariant_factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::invalid(format!(
                    "invariant factors must form a divisibility chain ({} does not divide {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(FGAbelianGroup {
            free_rank,
            invariant_factors,
            basis: None,
        })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
            basis: None,
        }
    }

    /// `ℤ/n` (trivial for `n = 1`, `ℤ` for `n = 0`).
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[BigInt::from(n)])
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
            basis: None,
        }
    }

    /// Canonical form of `⊕ ℤ/mᵢ` (`mᵢ = 0` meaning ℤ), remembering the original
    /// coordinates as the ambient basis.
    pub fn from_cyclic_orders(moduli: &[BigInt]) -> Self {
        let rel = IntMatrix::diagonal(moduli);
        let pres = cokernel_presentation(&rel);
        FGAbelianGroup {
            free_rank: pres.free_rank,
            invariant_factors: pres.invariant_factors.clone(),
            basis: Some(AmbientBasis {
                moduli: moduli.to_vec(),
                to_ambient: pres.lift.transpose(),
                from_ambient: pres.to_presented.transpose(),
            }),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn ambient_basis(&self) -> Option<&AmbientBasis> {
        self.basis.as_ref()
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Order of each canonical generator, 0 for free ones.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.free_rank];
        m.extend(self.invariant_factors.iter().cloned());
        m
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Order as a machine integer, when finite and small enough to enumerate.
    pub fn order_usize(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Exponent of a finite group (1 when trivial).
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| {
            self.invariant_factors
                .last()
                .cloned()
                .unwrap_or_else(BigInt::one)
        })
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.ngens() {
            return Err(Error::DimensionMismatch {
                context: "abelian group element",
                expected: self.ngens(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn reduce(&self, x: &[BigInt]) -> Result<Element> {
        self.check_len(x)?;
        Ok(reduce_mod(x, &self.moduli()))
    }

    pub fn zero(&self) -> Element {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(Zero::is_zero))
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Result<Element> {
        self.check_len(y)?;
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Result<Element> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Result<Element> {
        let s: Vec<BigInt> = x.iter().map(|a| k * a).collect();
        self.reduce(&s)
    }

    /// Order of an element; `None` for elements of infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Result<Option<BigInt>> {
        let x = self.reduce(x)?;
        let mut ord = BigInt::one();
        for (v, m) in x.iter().zip(self.moduli()) {
            if v.is_zero() {
                continue;
            }
            if m.is_zero() {
                return Ok(None);
            }
            ord = ord.lcm(&(&m / v.gcd(&m)));
        }
        Ok(Some(ord))
    }

    /// Canonical coordinates of an element given in ambient coordinates.
    pub fn from_ambient(&self, x: &[BigInt]) -> Result<Element> {
        let b = self
            .basis
            .as_ref()
            .ok_or_else(|| Error::invalid("group has no ambient basis"))?;
        let c = b.from_ambient.mul_vec(x)?;
        self.reduce(&c)
    }

    /// Ambient coordinates of an element, reduced by the ambient moduli.
    pub fn to_ambient(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let b = self
            .basis
            .as_ref()
            .ok_or_else(|| Error::invalid("group has no ambient basis"))?;
        let a = b.to_ambient.mul_vec(&self.reduce(x)?)?;
        Ok(reduce_mod(&a, &b.moduli))
    }

    /// Mixed-radix index of an element of a finite group, first coordinate least significant.
    pub fn element_index(&self, x: &[BigInt]) -> Result<usize> {
        if !self.is_finite() {
            return Err(Error::invalid("cannot index elements of an infinite group"));
        }
        let x = self.reduce(x)?;
        let mut idx = 0usize;
        let mut radix = 1usize;
        for (v, f) in x.iter().zip(&self.invariant_factors) {
            let (v, f) = (v.to_usize(), f.to_usize());
            let (Some(v), Some(f)) = (v, f) else {
                return Err(Error::BudgetExceeded {
                    what: "element indexing",
                    cap: usize::MAX,
                });
            };
            idx += v * radix;
            radix = radix.saturating_mul(f);
        }
        Ok(idx)
    }

    /// Inverse of [`element_index`](Self::element_index).
    pub fn element_at(&self, mut index: usize) -> Element {
        self.invariant_factors
            .iter()
            .map(|f| {
                let f = f.to_usize().expect("factor fits in usize");
                let v = index % f;
                index /= f;
                BigInt::from(v)
            })
            .collect()
    }

    /// All elements of a finite group in index order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let n = self
            .order_usize()
            .ok_or_else(|| Error::invalid("cannot enumerate an infinite group"))?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Same abstract group (free rank and invariant factors agree).
    pub fn is_isomorphic(&self, other: &FGAbelianGroup) -> bool {
        self == other
    }

    /// Subgroup generated by `gens`, with its own canonical form.
    pub fn subgroup(&self, gens: &[Element]) -> Result<Subgroup> {
        for g in gens {
            self.check_len(g)?;
        }
        let k = self.ngens();
        let s = gens.len();
        // Relations among the generators: c with Σ cᵢ gᵢ ∈ relations of self.
        let mut block = IntMatrix::zeros(k, s + k);
        for (j, g) in gens.iter().enumerate() {
            for i in 0..k {
                block.set(i, j, g[i].clone());
            }
        }
        for (i, m) in self.moduli().iter().enumerate() {
            block.set(i, s + i, m.clone());
        }
        let ker = kernel_basis(&block);
        let mut rel = IntMatrix::zeros(ker.cols(), s);
        for c in 0..ker.cols() {
            for j in 0..s {
                rel.set(c, j, ker.get(j, c).clone());
            }
        }
        let pres = cokernel_presentation(&rel);
        let group = FGAbelianGroup {
            free_rank: pres.free_rank,
            invariant_factors: pres.invariant_factors.clone(),
            basis: None,
        };
        let mut generators = Vec::with_capacity(group.ngens());
        for i in 0..group.ngens() {
            let mut e = self.zero();
            for (c, g) in pres.lift.row(i).iter().zip(gens) {
                for (acc, v) in e.iter_mut().zip(g) {
                    *acc += c * v;
                }
            }
            generators.push(self.reduce(&e)?);
        }
        Ok(Subgroup { group, generators })
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.invariant_factors.iter().map(|q| format!("Z/{q}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A subgroup in canonical form, with its canonical generators written in the parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FGAbelianGroup,
    pub generators: Vec<Element>,
}

/// Direct sum with invariant factors re-normalized into a divisibility chain.
///
/// The ambient basis of the result is the concatenation of the canonical
/// coordinates of `a` and `b`.
pub fn direct_sum(a: &FGAbelianGroup, b: &FGAbelianGroup) -> FGAbelianGroup {
    let mut moduli = a.moduli();
    moduli.extend(b.moduli());
    FGAbelianGroup::from_cyclic_orders(&moduli)
}

/// Homomorphism given by an integer matrix on canonical generators
/// (`target.ngens × source.ngens`, column `j` is the image of generator `j`).
#[derive(Clone, Debug)]
pub struct AbHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks that every relation of the source maps into the relations of the target.
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::DimensionMismatch {
                context: "AbHom matrix",
                expected: target.ngens() * source.ngens(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        for (j, m) in source.moduli().iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let image: Vec<BigInt> = matrix.column(j).iter().map(|v| v * m).collect();
            if !target.is_zero(&image)? {
                return Err(Error::invalid(format!(
                    "matrix does not define a homomorphism: generator {j} has order {m} \
                     but its image does not"
                )));
            }
        }
        let matrix = reduce_rows(&matrix, &target.moduli());
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn negation(g: &FGAbelianGroup) -> Self {
        let mut m = IntMatrix::identity(g.ngens());
        for i in 0..g.ngens() {
            m.set(i, i, -BigInt::one());
        }
        AbHom::new(g.clone(), g.clone(), m).expect("negation is a homomorphism")
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of `x`, reduced to canonical coordinates of the target.
    pub fn apply(&self, x: &[BigInt]) -> Result<Element> {
        self.source.check_len(x)?;
        self.target.reduce(&self.matrix.mul_vec(x)?)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AbHom) -> Result<AbHom> {
        if other.target != self.source {
            return Err(Error::invalid("composition of mismatched homomorphisms"));
        }
        let m = self.matrix.checked_mul(&other.matrix)?;
        AbHom::new(other.source.clone(), self.target.clone(), m)
    }

    /// Equality as maps (images of generators agree in the target).
    pub fn same_map(&self, other: &AbHom) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let moduli = self.target.moduli();
        (0..self.source.ngens()).all(|j| {
            reduce_mod(&self.matrix.column(j), &moduli)
                == reduce_mod(&other.matrix.column(j), &moduli)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.same_map(&AbHom::identity(&self.source))
    }

    pub fn image(&self) -> Result<Subgroup> {
        let gens: Vec<Element> = (0..self.source.ngens())
            .map(|j| self.target.reduce(&self.matrix.column(j)))
            .collect::<Result<_>>()?;
        self.target.subgroup(&gens)
    }

    /// Bijectivity test for maps between finite groups.
    pub fn is_isomorphism(&self) -> Result<bool> {
        if !self.source.is_finite() || !self.target.is_finite() {
            return Err(Error::invalid("isomorphism test needs finite groups"));
        }
        if self.source != self.target {
            return Ok(false);
        }
        Ok(self.image()?.group == self.target)
    }
}

fn reduce_rows(m: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let mut out = m.clone();
    for (i, q) in moduli.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).mod_floor(q));
        }
    }
    out
}

/// `(ℂ×)^m × F` with `F` finite, stored through its character group `ℤ^m ⊕ F̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalizableGroup {
    torus_rank: usize,
    finite_part: FGAbelianGroup,
}

impl DiagonalizableGroup {
    pub fn new(torus_rank: usize, finite_part: FGAbelianGroup) -> Result<Self> {
        if !finite_part.is_finite() {
            return Err(Error::invalid("finite part of a diagonalizable group must be finite"));
        }
        Ok(DiagonalizableGroup {
            torus_rank,
            finite_part,
        })
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn finite_part(&self) -> &FGAbelianGroup {
        &self.finite_part
    }

    /// `X*(Z) ≅ ℤ^m ⊕ F`, in the coordinates used by [`precompose_action`](Self::precompose_action).
    pub fn character_group(&self) -> FGAbelianGroup {
        FGAbelianGroup {
            free_rank: self.torus_rank,
            invariant_factors: self.finite_part.invariant_factors.clone(),
            basis: None,
        }
    }

    /// Per-coordinate orders of `Z[n]` in natural coordinates: `n` for each torus
    /// factor, then `gcd(fᵢ, n)`.
    fn natural_orders(&self, n: &BigInt) -> Vec<BigInt> {
        let mut orders = vec![n.clone(); self.torus_rank];
        orders.extend(self.finite_part.invariant_factors.iter().map(|f| f.gcd(n)));
        orders
    }

    /// The `n`-torsion subgroup `Z[n]`. Its ambient basis is the natural one: an
    /// element is a character `φ: X*(Z) → ℤ/n`, recorded by `φ(eᵢ)` on torus
    /// generators and by `xⱼ` with `φ(tⱼ) = xⱼ·n/gcd(fⱼ,n)` on torsion generators.
    pub fn torsion_at(&self, n: &BigInt) -> Result<FGAbelianGroup> {
        if !n.is_positive() {
            return Err(Error::invalid("torsion level must be positive"));
        }
        Ok(FGAbelianGroup::from_cyclic_orders(&self.natural_orders(n)))
    }

    /// `|Z[n]| = n^m · ∏ gcd(fᵢ, n)`.
    pub fn torsion_order(&self, n: &BigInt) -> BigInt {
        self.natural_orders(n).iter().product()
    }

    /// The inclusion `Z[n] ↪ Z[n·k]`.
    pub fn torsion_inclusion(&self, n: &BigInt, k: &BigInt) -> Result<AbHom> {
        let nk = n * k;
        let src = self.torsion_at(n)?;
        let dst = self.torsion_at(&nk)?;
        let small = self.natural_orders(n);
        let large = self.natural_orders(&nk);
        // ℤ/n ↪ ℤ/nk is multiplication by k; on a torsion coordinate this becomes
        // multiplication by gcd(f, nk)/gcd(f, n).
        let factors: Vec<BigInt> = small
            .iter()
            .zip(&large)
            .enumerate()
            .map(|(i, (s, l))| if i < self.torus_rank { k.clone() } else { l / s })
            .collect();
        let natural = IntMatrix::diagonal(&factors);
        natural_to_canonical(&src, &dst, &natural)
    }

    /// Action on `Z[n]` of a character-group endomorphism `S`: `φ ↦ φ ∘ S`.
    ///
    /// `S` is given on `X*(Z)` coordinates (torus first, column `j` the image of
    /// generator `j`). To act on `Z` on the left by `γ`, pass `S = T_γ⁻¹`.
    pub fn precompose_action(&self, s: &IntMatrix, n: &BigInt) -> Result<AbHom> {
        let q = self.character_group();
        // Validates that S is an endomorphism of the character group.
        AbHom::new(q.clone(), q.clone(), s.clone())?;
        let g = self.torsion_at(n)?;
        let orders = self.natural_orders(n);
        let scale: Vec<BigInt> = orders.iter().map(|o| n / o).collect();
        let k = orders.len();
        let mut natural = IntMatrix::zeros(k, k);
        for j in 0..k {
            // x = e_j has φ-values v = scale_j · e_j; then v' = Sᵀ v.
            for i in 0..k {
                let v = (&scale[j] * s.get(j, i)).mod_floor(n);
                let (quo, rem) = v.div_rem(&scale[i]);
                if !rem.is_zero() {
                    return Err(Error::invalid(
                        "character map does not preserve the torsion subgroup",
                    ));
                }
                natural.set(i, j, quo);
            }
        }
        natural_to_canonical(&g, &g, &natural)
    }
}

/// Converts a map given in ambient (natural) coordinates into an [`AbHom`] on canonical ones.
fn natural_to_canonical(
    src: &FGAbelianGroup,
    dst: &FGAbelianGroup,
    natural: &IntMatrix,
) -> Result<AbHom> {
    let sb = src.ambient_basis().expect("torsion groups carry a basis");
    let db = dst.ambient_basis().expect("torsion groups carry a basis");
    let m = &(&db.from_ambient * natural) * &sb.to_ambient;
    AbHom::new(src.clone(), dst.clone(), m)
}

impl fmt::Display for DiagonalizableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.torus_rank {
            0 => {}
            1 => parts.push("C*".to_string()),
            m => parts.push(format!("(C*)^{m}")),
        }
        parts.extend(
            self.finite_part
                .invariant_factors
                .iter()
                .map(|q| format!("mu_{q}")),
        );
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}
