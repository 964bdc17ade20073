//! Automorphisms of a based root datum and the induced action on the center.

use std::fmt;

use num_bigint::BigInt;

use crate::abgroup::AbHom;
use crate::error::{Error, Result};
use crate::exactlin::{solve_integer, IntMatrix};
use crate::grouptable::{FiniteGroup, Perm};
use crate::rootdatum::{BasedRootDatum, Center};

/// A lattice automorphism `T` of `X*` with `T(Π) = Π` and `ᵗT(Πᵛ) = Πᵛ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BRDAutomorphism {
    matrix: IntMatrix,
    /// `T α_i = α_{σ(i)}`, on positions in the list of simple roots.
    simple_root_permutation: Perm,
}

impl BRDAutomorphism {
    pub fn new(based: &BasedRootDatum, matrix: IntMatrix) -> Result<Self> {
        match is_brd_automorphism(based, &matrix)? {
            Ok(simple_root_permutation) => Ok(BRDAutomorphism {
                matrix,
                simple_root_permutation,
            }),
            Err(v) => Err(Error::invalid(format!("not an automorphism of the based root datum: {v}"))),
        }
    }

    pub fn identity(based: &BasedRootDatum) -> Self {
        BRDAutomorphism {
            matrix: IntMatrix::identity(based.datum().rank()),
            simple_root_permutation: (0..based.simple_indices().len()).collect(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn simple_root_permutation(&self) -> &[usize] {
        &self.simple_root_permutation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BRDAutomorphism) -> BRDAutomorphism {
        BRDAutomorphism {
            matrix: &self.matrix * &other.matrix,
            simple_root_permutation: other
                .simple_root_permutation
                .iter()
                .map(|&i| self.simple_root_permutation[i])
                .collect(),
        }
    }
}

/// Why a matrix fails to be an automorphism of the based root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrdViolation {
    NotUnimodular,
    /// `T α_i` is not a simple root.
    SimpleRootMoved { simple: usize },
    /// `ᵗT α_{σ(i)}ᵛ ≠ α_iᵛ`.
    CorootMismatch { simple: usize },
}

impl fmt::Display for BrdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotUnimodular => write!(f, "matrix is not invertible over the integers"),
            Self::SimpleRootMoved { simple } => {
                write!(f, "T does not map simple root {simple} to a simple root")
            }
            Self::CorootMismatch { simple } => write!(
                f,
                "transpose of T does not map the matching simple coroot back to simple coroot {simple}"
            ),
        }
    }
}

/// Checks `T(Π) = Π` and `ᵗT(Πᵛ) = Πᵛ` compatibly; on success returns the
/// induced permutation of simple roots.
pub fn is_brd_automorphism(
    based: &BasedRootDatum,
    t: &IntMatrix,
) -> Result<std::result::Result<Perm, BrdViolation>> {
    let rank = based.datum().rank();
    if t.rows() != rank || t.cols() != rank {
        return Err(Error::DimensionMismatch {
            context: "based root datum automorphism",
            expected: rank,
            found: if t.rows() != rank { t.rows() } else { t.cols() },
        });
    }
    if !t.is_unimodular() {
        return Ok(Err(BrdViolation::NotUnimodular));
    }
    let simple = based.simple_roots();
    let cosimple = based.simple_coroots();
    let tt = t.transpose();
    let mut sigma = Vec::with_capacity(simple.len());
    for (i, a) in simple.iter().enumerate() {
        let img = t.mul_vec(a)?;
        let Some(j) = simple.iter().position(|s| *s == img) else {
            return Ok(Err(BrdViolation::SimpleRootMoved { simple: i }));
        };
        if tt.mul_vec(&cosimple[j])? != cosimple[i] {
            return Ok(Err(BrdViolation::CorootMismatch { simple: i }));
        }
        sigma.push(j);
    }
    Ok(Ok(sigma))
}

/// Diagram symmetries of a semisimple based datum, split by whether they lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphisms {
    pub lifted: Vec<BRDAutomorphism>,
    /// Cartan-matrix symmetries with no lattice automorphism realizing them.
    pub non_lifting: Vec<Perm>,
}

/// All automorphisms of the based datum determined by a permutation of the
/// simple roots. Requires a semisimple datum.
pub fn diagram_automorphisms(based: &BasedRootDatum) -> Result<DiagramAutomorphisms> {
    let datum = based.datum();
    let k = based.simple_indices().len();
    if k != datum.rank() {
        return Err(Error::invalid(
            "diagram automorphisms need a semisimple datum; supply Ad explicitly instead",
        ));
    }
    let cartan = based.cartan_matrix();
    let simple = based.simple_roots();
    // Rows of S are the simple roots; row r of T solves S·t_r = (α_{σ(i)})_r.
    let s = IntMatrix::from_rows(k, simple.clone())?;
    let mut out = DiagramAutomorphisms {
        lifted: Vec::new(),
        non_lifting: Vec::new(),
    };
    for sigma in permutations(k) {
        let preserves = (0..k).all(|i| (0..k).all(|j| cartan.get(sigma[i], sigma[j]) == cartan.get(i, j)));
        if !preserves {
            continue;
        }
        match lift(based, &s, &simple, &sigma)? {
            Some(t) => out.lifted.push(t),
            None => out.non_lifting.push(sigma),
        }
    }
    Ok(out)
}

fn lift(based: &BasedRootDatum, s: &IntMatrix, simple: &[Vec<BigInt>], sigma: &[usize]) -> Result<Option<BRDAutomorphism>> {
    let k = s.rows();
    let mut t = IntMatrix::zeros(k, k);
    for r in 0..k {
        let rhs: Vec<BigInt> = (0..k).map(|i| simple[sigma[i]][r].clone()).collect();
        let Some(row) = solve_integer(s, &rhs)? else {
            return Ok(None);
        };
        for (c, v) in row.into_iter().enumerate() {
            t.set(r, c, v);
        }
    }
    match is_brd_automorphism(based, &t)? {
        Ok(perm) if perm == sigma => Ok(Some(BRDAutomorphism {
            matrix: t,
            simple_root_permutation: perm,
        })),
        _ => Ok(None),
    }
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// The action of `T` on `Z(G)[n]`: `φ ↦ φ ∘ T̄⁻¹` with `T̄` the map induced on `X*/ℤR`.
pub fn induced_center_action(center: &Center, t: &IntMatrix, n: &BigInt) -> Result<AbHom> {
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::invalid("automorphism matrix is not unimodular"))?;
    let s = center.induced_quotient_map(&t_inv)?;
    center.group.precompose_action(&s, n)
}

/// `Ad: Γ → Aut(B(G))`, stored on every element of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdHom {
    gamma: FiniteGroup,
    images: Vec<IntMatrix>,
}

/// Why a candidate `Ad` is not a homomorphism into `Aut(B(G))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdViolation {
    Image { element: usize, violation: BrdViolation },
    IdentityImage,
    NotHomomorphism { x: usize, y: usize },
}

impl fmt::Display for AdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Image { element, violation } => {
                write!(f, "image of element {element}: {violation}")
            }
            Self::IdentityImage => write!(f, "identity is not sent to the identity matrix"),
            Self::NotHomomorphism { x, y } => {
                write!(f, "Ad({x}*{y}) differs from Ad({x})*Ad({y})")
            }
        }
    }
}

impl AdHom {
    /// Extends generator images along breadth-first words. The result is not
    /// validated; use [`validate_ad`].
    pub fn from_generator_images(gamma: FiniteGroup, rank: usize, images: Vec<IntMatrix>) -> Result<Self> {
        let gens = gamma.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch {
                context: "Ad generator images",
                expected: gens.len(),
                found: images.len(),
            });
        }
        for m in &images {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch {
                    context: "Ad matrix size",
                    expected: rank,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        let (reached, tree) = gamma.word_tree(&gens);
        if let Some(x) = reached.iter().position(|r| !r) {
            return Err(Error::invalid(format!("generators of gamma do not reach element {x}")));
        }
        let mut all: Vec<Option<IntMatrix>> = vec![None; gamma.order()];
        all[gamma.identity()] = Some(IntMatrix::identity(rank));
        // Process in order of word length so parents come first.
        let mut order: Vec<usize> = (0..gamma.order()).collect();
        let depth = depths(&tree, gamma.identity());
        order.sort_by_key(|&x| depth[x]);
        for x in order {
            if let Some((p, k)) = tree[x] {
                let parent = all[p].clone().expect("parent visited first");
                all[x] = Some(&parent * &images[k]);
            }
        }
        Ok(AdHom {
            gamma,
            images: all.into_iter().map(|m| m.expect("every element reached")).collect(),
        })
    }

    /// Every element's image, with no extension step.
    pub fn from_all_images(gamma: FiniteGroup, images: Vec<IntMatrix>) -> Result<Self> {
        if images.len() != gamma.order() {
            return Err(Error::DimensionMismatch {
                context: "Ad images",
                expected: gamma.order(),
                found: images.len(),
            });
        }
        Ok(AdHom { gamma, images })
    }

    pub fn trivial(gamma: FiniteGroup, rank: usize) -> Self {
        let images = vec![IntMatrix::identity(rank); gamma.order()];
        AdHom { gamma, images }
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn image(&self, g: usize) -> &IntMatrix {
        &self.images[g]
    }

    pub fn images(&self) -> &[IntMatrix] {
        &self.images
    }

    /// `Ad(γ)` on `Z(G)[n]` for every `γ`.
    pub fn center_action(&self, center: &Center, n: &BigInt) -> Result<Vec<AbHom>> {
        self.images
            .iter()
            .map(|t| induced_center_action(center, t, n))
            .collect()
    }
}

fn depths(tree: &[Option<(usize, usize)>], identity: usize) -> Vec<usize> {
    fn depth(x: usize, tree: &[Option<(usize, usize)>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[x] {
            return d;
        }
        let d = match tree[x] {
            Some((p, _)) => depth(p, tree, memo) + 1,
            None => 0,
        };
        memo[x] = Some(d);
        d
    }
    let mut memo = vec![None; tree.len()];
    memo[identity] = Some(0);
    (0..tree.len()).map(|x| depth(x, tree, &mut memo)).collect()
}

/// All images are based-datum automorphisms and `Ad` respects the table.
pub fn validate_ad(based: &BasedRootDatum, ad: &AdHom) -> Result<std::result::Result<(), AdViolation>> {
    let g = &ad.gamma;
    for (element, m) in ad.images.iter().enumerate() {
        if let Err(violation) = is_brd_automorphism(based, m)? {
            return Ok(Err(AdViolation::Image { element, violation }));
        }
    }
    let id = &ad.images[g.identity()];
    if !id.is_square() || *id != IntMatrix::identity(id.rows()) {
        return Ok(Err(AdViolation::IdentityImage));
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if ad.images[g.mul(x, y)] != &ad.images[x] * &ad.images[y] {
                return Ok(Err(AdViolation::NotHomomorphism { x, y }));
            }
        }
    }
    Ok(Ok(()))
}
