//! Root data, reflections, Weyl groups, positive systems, Dynkin diagrams and the center.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abgroup::{DiagonalizableGroup, FGAbelianGroup};
use crate::error::{Error, Result};
use crate::exactlin::{
    cokernel_presentation, kernel_basis, row_hermite_basis, solve_integer, CokernelPresentation,
    IntMatrix,
};
use crate::grouptable::{FiniteGroup, Perm};

/// Default cap on the Weyl group closure.
pub const DEFAULT_WEYL_CAP: usize = 100_000;
/// Cap on the number of roots produced by [`BasedRootDatum::from_simple`].
pub const ROOT_CLOSURE_CAP: usize = 10_000;

pub type Vector = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_big(v: &[i64]) -> Vector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `(X*, R, X_*, Rᵛ)` in coordinates: roots live in `ℤ^rank`, coroots in the
/// dual `ℤ^rank`, and the pairing is the dot product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
}

/// The first axiom a candidate root datum fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootDatumViolation {
    CountMismatch { roots: usize, coroots: usize },
    WrongLength { index: usize, coroot: bool, len: usize },
    Pairing { index: usize, value: BigInt },
    DuplicateRoot { first: usize, second: usize },
    ReflectionLeavesRoots { reflection: usize, root: usize },
    CoreflectionLeavesCoroots { reflection: usize, coroot: usize },
}

impl fmt::Display for RootDatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CountMismatch { roots, coroots } => {
                write!(f, "{roots} roots but {coroots} coroots")
            }
            Self::WrongLength { index, coroot, len } => write!(
                f,
                "{} {index} has length {len}",
                if *coroot { "coroot" } else { "root" }
            ),
            Self::Pairing { index, value } => {
                write!(f, "pairing of root {index} with its coroot is {value}, not 2")
            }
            Self::DuplicateRoot { first, second } => {
                write!(f, "roots {first} and {second} coincide")
            }
            Self::ReflectionLeavesRoots { reflection, root } => write!(
                f,
                "reflection in root {reflection} sends root {root} outside the root set"
            ),
            Self::CoreflectionLeavesCoroots { reflection, coroot } => write!(
                f,
                "coreflection in coroot {reflection} sends coroot {coroot} outside the coroot set"
            ),
        }
    }
}

impl RootDatum {
    /// Stores the vectors; call [`validate`](Self::validate) for the axioms.
    pub fn new(rank: usize, roots: Vec<Vector>, coroots: Vec<Vector>) -> Self {
        RootDatum {
            rank,
            roots,
            coroots,
        }
    }

    pub fn from_i64(rank: usize, roots: &[&[i64]], coroots: &[&[i64]]) -> Self {
        Self::new(
            rank,
            roots.iter().map(|r| to_big(r)).collect(),
            coroots.iter().map(|r| to_big(r)).collect(),
        )
    }

    /// Validates and returns the datum, mapping a violation to an error.
    pub fn checked(self) -> Result<Self> {
        match self.validate() {
            Ok(()) => Ok(self),
            Err(v) => Err(Error::invalid(format!("not a root datum: {v}"))),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Roots as the rows of an `N × rank` matrix.
    pub fn root_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.rank, self.roots.clone()).expect("validated lengths")
    }

    pub fn coroot_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.rank, self.coroots.clone()).expect("validated lengths")
    }

    pub fn root_index(&self, v: &[BigInt]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == v)
    }

    pub fn coroot_index(&self, v: &[BigInt]) -> Option<usize> {
        self.coroots.iter().position(|r| r.as_slice() == v)
    }

    /// `⟨coroot j, root i⟩`.
    pub fn pairing(&self, coroot: usize, root: usize) -> BigInt {
        dot(&self.coroots[coroot], &self.roots[root])
    }

    /// Checks the root datum axioms, reporting the first failure.
    pub fn validate(&self) -> std::result::Result<(), RootDatumViolation> {
        if self.roots.len() != self.coroots.len() {
            return Err(RootDatumViolation::CountMismatch {
                roots: self.roots.len(),
                coroots: self.coroots.len(),
            });
        }
        for (coroot, list) in [(false, &self.roots), (true, &self.coroots)] {
            if let Some((index, v)) = list.iter().enumerate().find(|(_, v)| v.len() != self.rank) {
                return Err(RootDatumViolation::WrongLength {
                    index,
                    coroot,
                    len: v.len(),
                });
            }
        }
        for i in 0..self.roots.len() {
            let value = self.pairing(i, i);
            if value != BigInt::from(2) {
                return Err(RootDatumViolation::Pairing { index: i, value });
            }
        }
        let mut seen: HashMap<&Vector, usize> = HashMap::new();
        for (i, r) in self.roots.iter().enumerate() {
            if let Some(&first) = seen.get(r) {
                return Err(RootDatumViolation::DuplicateRoot { first, second: i });
            }
            seen.insert(r, i);
        }
        let root_set: HashSet<&Vector> = self.roots.iter().collect();
        let coroot_set: HashSet<&Vector> = self.coroots.iter().collect();
        for b in 0..self.roots.len() {
            for a in 0..self.roots.len() {
                let img = self.reflect_root(b, &self.roots[a]);
                if !root_set.contains(&img) {
                    return Err(RootDatumViolation::ReflectionLeavesRoots {
                        reflection: b,
                        root: a,
                    });
                }
                let img = self.reflect_coroot(b, &self.coroots[a]);
                if !coroot_set.contains(&img) {
                    return Err(RootDatumViolation::CoreflectionLeavesCoroots {
                        reflection: b,
                        coroot: a,
                    });
                }
            }
        }
        Ok(())
    }

    /// `λ − ⟨βᵛ, λ⟩ β`.
    pub fn reflect_root(&self, beta: usize, lambda: &[BigInt]) -> Vector {
        let c = dot(&self.coroots[beta], lambda);
        lambda
            .iter()
            .zip(&self.roots[beta])
            .map(|(l, b)| l - &c * b)
            .collect()
    }

    /// `ℓ − ⟨ℓ, β⟩ βᵛ`.
    pub fn reflect_coroot(&self, beta: usize, ell: &[BigInt]) -> Vector {
        let c = dot(ell, &self.roots[beta]);
        ell.iter()
            .zip(&self.coroots[beta])
            .map(|(l, b)| l - &c * b)
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.roots.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.roots.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `s_β` acting on column vectors of `X*`: `I − β·βᵛᵀ`.
    pub fn reflection(&self, beta: usize) -> Result<IntMatrix> {
        self.check_index(beta)?;
        Ok(reflection_matrix(&self.roots[beta], &self.coroots[beta]))
    }

    /// Matrix of `s_βᵛ` acting on column vectors of `X_*`: `I − βᵛ·βᵀ`.
    pub fn coreflection(&self, beta: usize) -> Result<IntMatrix> {
        self.check_index(beta)?;
        Ok(reflection_matrix(&self.coroots[beta], &self.roots[beta]))
    }

    /// Permutation of root indices induced by a matrix acting on `X*`, if any.
    pub fn root_permutation(&self, m: &IntMatrix) -> Option<Perm> {
        let index: HashMap<&Vector, usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        self.roots
            .iter()
            .map(|r| index.get(&m.mul_vec(r).ok()?).copied())
            .collect()
    }

    /// Roots span a sublattice of full rank.
    pub fn is_semisimple(&self) -> bool {
        self.root_matrix().rank() == self.rank
    }

    /// `Z(G) = Hom(X*/ℤR, ℂ×)`, with the presentation of `X*/ℤR` it was read from.
    pub fn center(&self) -> Center {
        let presentation = cokernel_presentation(&self.root_matrix());
        let finite = FGAbelianGroup::new(0, presentation.invariant_factors.clone())
            .expect("invariant factors form a divisibility chain");
        let group = DiagonalizableGroup::new(presentation.free_rank, finite)
            .expect("finite part is finite");
        Center {
            group,
            presentation,
        }
    }

    /// The sublattices `ℤR` (characters killing `Z(G)`) and `{λ : ⟨αᵛ, λ⟩ = 0 ∀α}`
    /// of `X*`, and the index of their direct sum.
    pub fn almost_product_check(&self) -> Result<AlmostProduct> {
        let root_lattice = row_hermite_basis(&self.root_matrix());
        let orth = kernel_basis(&self.coroot_matrix()).transpose();
        let orth = row_hermite_basis(&orth);
        let stacked = root_lattice.vstack(&orth)?;
        if stacked.rows() != self.rank || stacked.rank() != self.rank {
            return Err(Error::invalid(
                "root lattice and coroot annihilator do not span a finite-index sublattice",
            ));
        }
        let index = stacked.determinant()?.abs();
        Ok(AlmostProduct {
            sublattice_1: root_lattice,
            sublattice_2: orth,
            index,
        })
    }
}

fn reflection_matrix(v: &[BigInt], w: &[BigInt]) -> IntMatrix {
    let n = v.len();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j) - &v[i] * &w[j];
            m.set(i, j, e);
        }
    }
    m
}

/// `Z(G)` together with the presentation `X*/ℤR ≅ ℤ^m ⊕ ⊕ℤ/fᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub group: DiagonalizableGroup,
    pub presentation: CokernelPresentation,
}

impl Center {
    /// Matrix of the map induced on `X*/ℤR` by `T` (which must preserve `ℤR`), in
    /// presented coordinates, column `j` the image of generator `j`.
    pub fn induced_quotient_map(&self, t: &IntMatrix) -> Result<IntMatrix> {
        let k = self.presentation.generator_count();
        let mut out = IntMatrix::zeros(k, k);
        for j in 0..k {
            let img = t.mul_vec(self.presentation.lift.row(j))?;
            let coords = self.presentation.coordinates(&img)?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

/// Result of [`RootDatum::almost_product_check`]; sublattice bases are matrix rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostProduct {
    pub sublattice_1: IntMatrix,
    pub sublattice_2: IntMatrix,
    pub index: BigInt,
}

/// A root datum with a choice of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    datum: RootDatum,
    simple: Vec<usize>,
    /// Coefficients of every root in the simple roots.
    coefficients: Vec<Vector>,
}

impl BasedRootDatum {
    /// Checks that the simple roots are independent and that every root is a
    /// nonnegative or nonpositive integral combination of them.
    pub fn new(datum: RootDatum, simple: Vec<usize>) -> Result<Self> {
        let datum = datum.checked()?;
        for &s in &simple {
            datum.check_index(s)?;
        }
        let rank = datum.rank();
        let smat = IntMatrix::from_rows(rank, simple.iter().map(|&s| datum.roots[s].clone()))?;
        if smat.rank() != simple.len() {
            return Err(Error::invalid("simple roots are linearly dependent"));
        }
        let st = smat.transpose();
        let mut coefficients = Vec::with_capacity(datum.roots.len());
        for (i, r) in datum.roots.iter().enumerate() {
            let c = solve_integer(&st, r)?.ok_or_else(|| {
                Error::invalid(format!("root {i} is not an integral combination of the simple roots"))
            })?;
            let pos = c.iter().all(|x| !x.is_negative());
            let neg = c.iter().all(|x| !x.is_positive());
            if !pos && !neg {
                return Err(Error::invalid(format!(
                    "root {i} has coefficients of both signs in the simple roots"
                )));
            }
            coefficients.push(c);
        }
        Ok(BasedRootDatum {
            datum,
            simple,
            coefficients,
        })
    }

    /// Chooses a base from a generic linear functional: positive roots are those
    /// where it is positive, simple roots the positive roots that are not sums
    /// of two positive roots.
    pub fn with_generic_base(datum: RootDatum) -> Result<Self> {
        let datum = datum.checked()?;
        let bound: BigInt = datum
            .roots
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let base = BigInt::from(2) * bound + 1;
        let mut functional = Vec::with_capacity(datum.rank);
        let mut p = BigInt::one();
        for _ in 0..datum.rank {
            functional.push(p.clone());
            p *= &base;
        }
        let positive: Vec<usize> = (0..datum.roots.len())
            .filter(|&i| dot(&functional, &datum.roots[i]).is_positive())
            .collect();
        let pos_set: HashSet<&Vector> = positive.iter().map(|&i| &datum.roots[i]).collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&j| {
                    let diff: Vector = datum.roots[i]
                        .iter()
                        .zip(&datum.roots[j])
                        .map(|(a, b)| a - b)
                        .collect();
                    pos_set.contains(&diff)
                })
            })
            .collect();
        Self::new(datum, simple)
    }

    /// Closes simple roots and coroots under the simple reflections; the simple
    /// roots become roots `0..k`.
    pub fn from_simple(rank: usize, simple_roots: Vec<Vector>, simple_coroots: Vec<Vector>) -> Result<Self> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::DimensionMismatch {
                context: "simple coroots",
                expected: simple_roots.len(),
                found: simple_coroots.len(),
            });
        }
        let k = simple_roots.len();
        let simple_datum = RootDatum::new(rank, simple_roots.clone(), simple_coroots.clone());
        for i in 0..k {
            if simple_roots[i].len() != rank || simple_coroots[i].len() != rank {
                return Err(Error::invalid(format!("simple root {i} has the wrong length")));
            }
            if simple_datum.pairing(i, i) != BigInt::from(2) {
                return Err(Error::invalid(format!(
                    "simple root {i} pairs to {} with its coroot",
                    simple_datum.pairing(i, i)
                )));
            }
        }
        let mut roots = simple_roots.clone();
        let mut coroots = simple_coroots.clone();
        let mut seen: HashSet<Vector> = roots.iter().cloned().collect();
        let mut queue: VecDeque<usize> = (0..k).collect();
        while let Some(x) = queue.pop_front() {
            for s in 0..k {
                let r = simple_datum.reflect_root(s, &roots[x]);
                if seen.contains(&r) {
                    continue;
                }
                if roots.len() >= ROOT_CLOSURE_CAP {
                    return Err(Error::BudgetExceeded {
                        what: "root closure",
                        cap: ROOT_CLOSURE_CAP,
                    });
                }
                let c = simple_datum.reflect_coroot(s, &coroots[x]);
                seen.insert(r.clone());
                roots.push(r);
                coroots.push(c);
                queue.push_back(roots.len() - 1);
            }
        }
        Self::new(RootDatum::new(rank, roots, coroots), (0..k).collect())
    }

    /// Datum attached to a Cartan matrix `A_ij = ⟨α_iᵛ, α_j⟩`: the adjoint form has
    /// `X*` the root lattice, the simply connected form has `X_*` the coroot lattice.
    pub fn from_cartan(cartan: &[&[i64]], adjoint: bool) -> Result<Self> {
        let k = cartan.len();
        let a = IntMatrix::from_i64(cartan);
        let identity = IntMatrix::identity(k);
        let (roots, coroots) = if adjoint {
            (identity.row_vecs(), a.row_vecs())
        } else {
            (a.transpose().row_vecs(), identity.row_vecs())
        };
        Self::from_simple(k, roots, coroots)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<Vector> {
        self.simple.iter().map(|&s| self.datum.roots[s].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vector> {
        self.simple.iter().map(|&s| self.datum.coroots[s].clone()).collect()
    }

    pub fn coefficients(&self, root: usize) -> &[BigInt] {
        &self.coefficients[root]
    }

    /// Indices of `R⁺`, in root order.
    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.datum.roots.len())
            .filter(|&i| self.coefficients[i].iter().any(|c| c.is_positive()))
            .collect()
    }

    /// `A_ij = ⟨α_iᵛ, α_j⟩` on the simple roots.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let k = self.simple.len();
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.datum.pairing(self.simple[i], self.simple[j]));
            }
        }
        m
    }

    /// Closure of the simple reflections, numbered breadth-first (`x·s_k`) from the identity.
    pub fn weyl_generate(&self, cap: usize) -> Result<WeylGroup> {
        let rank = self.datum.rank;
        let generators: Vec<IntMatrix> = self
            .simple
            .iter()
            .map(|&s| self.datum.reflection(s))
            .collect::<Result<_>>()?;
        let mut elements = vec![IntMatrix::identity(rank)];
        let mut index: HashMap<IntMatrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut x = 0;
        while x < elements.len() {
            for g in &generators {
                let y = &elements[x] * g;
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::BudgetExceeded {
                            what: "Weyl group closure",
                            cap,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            x += 1;
        }
        let root_perms = elements
            .iter()
            .map(|w| {
                self.datum
                    .root_permutation(w)
                    .ok_or_else(|| Error::internal("Weyl group element does not permute the roots"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylGroup {
            elements,
            generators,
            root_perms,
        })
    }

    /// The `W`-orbit of `R⁺`, each system paired with the unique `w` producing it.
    pub fn positive_systems(&self, weyl: &WeylGroup) -> Result<Vec<PositiveSystem>> {
        let base = self.positive_roots();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out = Vec::with_capacity(weyl.order());
        for (w, perm) in weyl.root_perms.iter().enumerate() {
            let mut roots: Vec<usize> = base.iter().map(|&i| perm[i]).collect();
            roots.sort_unstable();
            if let Some(&other) = seen.get(&roots) {
                return Err(Error::internal(format!(
                    "Weyl elements {other} and {w} give the same positive system"
                )));
            }
            seen.insert(roots.clone(), w);
            out.push(PositiveSystem {
                roots,
                weyl_element: w,
            });
        }
        Ok(out)
    }

    /// Dynkin diagram on the simple roots.
    pub fn dynkin(&self) -> DynkinDiagram {
        let k = self.simple.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let a = self.datum.pairing(self.simple[j], self.simple[i]);
                let b = self.datum.pairing(self.simple[i], self.simple[j]);
                if !a.is_zero() || !b.is_zero() {
                    edges.push(DynkinEdge {
                        source: i,
                        target: j,
                        labels: (a, b),
                    });
                }
            }
        }
        DynkinDiagram {
            vertices: self.simple.clone(),
            edges,
        }
    }
}

/// A finite Weyl group as matrices on `X*` (column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub elements: Vec<IntMatrix>,
    pub generators: Vec<IntMatrix>,
    /// `root_perms[w][i]` is the index of `w·βᵢ`.
    pub root_perms: Vec<Perm>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The abstract group, numbered like [`elements`](Self::elements).
    pub fn to_finite_group(&self) -> Result<FiniteGroup> {
        let degree = self.root_perms[0].len();
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| {
                let i = self.elements.iter().position(|e| e == g).expect("generator in closure");
                self.root_perms[i].clone()
            })
            .collect();
        let (group, perms) = FiniteGroup::from_generators(degree, &gens, usize::MAX)?;
        if group.order() != self.order() || perms != self.root_perms {
            return Err(Error::internal("Weyl group does not act faithfully on its roots"));
        }
        Ok(group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    /// Sorted root indices.
    pub roots: Vec<usize>,
    pub weyl_element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinEdge {
    /// Positions in the list of simple roots, `source < target`.
    pub source: usize,
    pub target: usize,
    /// `(⟨α_targetᵛ, α_source⟩, ⟨α_sourceᵛ, α_target⟩)`.
    pub labels: (BigInt, BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    /// Root indices of the simple roots.
    pub vertices: Vec<usize>,
    pub edges: Vec<DynkinEdge>,
}

impl DynkinDiagram {
    /// Every edge has label product in `{1, 2, 3}` and both labels negative.
    pub fn is_crystallographic(&self) -> bool {
        self.edges.iter().all(|e| {
            let p = &e.labels.0 * &e.labels.1;
            e.labels.0.is_negative()
                && e.labels.1.is_negative()
                && p >= BigInt::one()
                && p <= BigInt::from(3)
        })
    }
}

/// Standard examples.
pub mod named {
    use super::*;

    fn based(rank: usize, roots: &[&[i64]], coroots: &[&[i64]], simple: Vec<usize>) -> BasedRootDatum {
        BasedRootDatum::new(RootDatum::from_i64(rank, roots, coroots), simple)
            .expect("named datum is valid")
    }

    pub fn sl2() -> BasedRootDatum {
        based(1, &[&[2], &[-2]], &[&[1], &[-1]], vec![0])
    }

    pub fn pgl2() -> BasedRootDatum {
        based(1, &[&[1], &[-1]], &[&[2], &[-2]], vec![0])
    }

    pub fn gl2() -> BasedRootDatum {
        based(2, &[&[1, -1], &[-1, 1]], &[&[1, -1], &[-1, 1]], vec![0])
    }

    /// `X*` the weight lattice: simple roots `(2,−1), (−1,2)`, coroots the standard basis.
    pub fn sl3() -> BasedRootDatum {
        BasedRootDatum::from_cartan(&[&[2, -1], &[-1, 2]], false).expect("A2")
    }

    /// `X*` the root lattice.
    pub fn pgl3() -> BasedRootDatum {
        BasedRootDatum::from_cartan(&[&[2, -1], &[-1, 2]], true).expect("A2")
    }

    /// Adjoint `B₂` with the short simple root first.
    pub fn b2() -> BasedRootDatum {
        BasedRootDatum::from_cartan(&[&[2, -2], &[-1, 2]], true).expect("B2")
    }

    /// `G₂` with the short simple root first.
    pub fn g2() -> BasedRootDatum {
        BasedRootDatum::from_cartan(&[&[2, -3], &[-1, 2]], true).expect("G2")
    }

    pub fn a1xa1_adjoint() -> BasedRootDatum {
        BasedRootDatum::from_cartan(&[&[2, 0], &[0, 2]], true).expect("A1xA1")
    }

    /// Adjoint `D₄` with the central node second.
    pub fn d4_adjoint() -> BasedRootDatum {
        BasedRootDatum::from_cartan(
            &[&[2, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 2, 0], &[0, -1, 0, 2]],
            true,
        )
        .expect("D4")
    }

    /// `(ℂ×)^rank`: no roots.
    pub fn torus(rank: usize) -> BasedRootDatum {
        BasedRootDatum::new(RootDatum::new(rank, Vec::new(), Vec::new()), Vec::new())
            .expect("torus")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(sl2().datum().validate().is_ok());
        assert!(pgl2().datum().validate().is_ok());
        let bad = RootDatum::from_i64(1, &[&[1], &[-1]], &[&[1], &[-1]]);
        assert!(matches!(bad.validate(), Err(RootDatumViolation::Pairing { index: 0, .. })));
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(sl2().datum().reflection(0).unwrap(), IntMatrix::from_i64(&[&[-1]]));
        assert_eq!(sl2().datum().coreflection(0).unwrap(), IntMatrix::from_i64(&[&[-1]]));
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(gl2().datum().reflection(0).unwrap(), swap);
        assert_eq!(gl2().datum().coreflection(0).unwrap(), swap);
        assert!(sl2().datum().reflection(5).is_err());
    }

    #[test]
    fn weyl_orders() {
        let cases = [(sl2(), 2), (sl3(), 6), (pgl3(), 6), (b2(), 8), (g2(), 12), (d4_adjoint(), 192)];
        for (b, order) in cases {
            let w = b.weyl_generate(DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(w.order(), order);
            assert_eq!(b.positive_systems(&w).unwrap().len(), order);
            assert_eq!(w.to_finite_group().unwrap().order(), order);
        }
        assert!(matches!(
            d4_adjoint().weyl_generate(100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn root_counts() {
        assert_eq!(sl3().datum().root_count(), 6);
        assert_eq!(b2().datum().root_count(), 8);
        assert_eq!(g2().datum().root_count(), 12);
        assert_eq!(d4_adjoint().datum().root_count(), 24);
    }

    #[test]
    fn dynkin_examples() {
        let d = sl3().dynkin();
        assert_eq!(d.edges.len(), 1);
        assert_eq!(d.edges[0].labels, (BigInt::from(-1), BigInt::from(-1)));
        assert!(a1xa1_adjoint().dynkin().edges.is_empty());
        let d = b2().dynkin();
        assert_eq!(d.edges[0].labels, (BigInt::from(-1), BigInt::from(-2)));
        assert!(g2().dynkin().is_crystallographic());
        assert_eq!(d4_adjoint().dynkin().edges.len(), 3);
    }

    #[test]
    fn center_examples() {
        let z = sl2().datum().center().group;
        assert_eq!((z.torus_rank(), z.finite_part().invariant_factors().to_vec()), (0, vec![BigInt::from(2)]));
        let z = pgl2().datum().center().group;
        assert!(z.finite_part().is_trivial() && z.torus_rank() == 0);
        let z = gl2().datum().center().group;
        assert!(z.finite_part().is_trivial() && z.torus_rank() == 1);
        let z = sl3().datum().center().group;
        assert_eq!(z.finite_part().invariant_factors(), &[BigInt::from(3)]);
        let z = torus(3).datum().center().group;
        assert_eq!(z.torus_rank(), 3);
        assert!(pgl3().datum().center().group.finite_part().is_trivial());
    }

    #[test]
    fn almost_product_examples() {
        let ap = gl2().datum().almost_product_check().unwrap();
        assert_eq!(ap.index, BigInt::from(2));
        assert_eq!(ap.sublattice_1, IntMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(ap.sublattice_2, IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(sl2().datum().almost_product_check().unwrap().index, BigInt::from(2));
        assert_eq!(pgl2().datum().almost_product_check().unwrap().index, BigInt::from(1));
        assert_eq!(torus(2).datum().almost_product_check().unwrap().index, BigInt::from(1));
    }

    #[test]
    fn generic_base_matches() {
        let b = BasedRootDatum::with_generic_base(g2().datum().clone()).unwrap();
        assert_eq!(b.simple_indices().len(), 2);
        assert_eq!(b.positive_roots().len(), 6);
    }

    #[test]
    fn rejects_bad_base() {
        // Both roots of SL2 as "simple roots" are dependent.
        assert!(BasedRootDatum::new(sl2().datum().clone(), vec![0, 1]).is_err());
    }
}
