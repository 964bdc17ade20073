//! Group cohomology `Hᵖ(Γ, A)` for `p ≤ 2` from the normalized bar complex.
//!
//! A cochain of degree `p` is stored on all of `Γᵖ`; tuple `(g₁, …, g_p)` has
//! index `Σ gᵢ |Γ|^{p-i}`. The linear algebra works with the normalized
//! complex: cochains vanishing whenever an argument is the identity, with
//! coordinate `tuple·t + j` for the `j`-th canonical coordinate of `A` on the
//! tuple's position among tuples of non-identity elements.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::{AbHom, DiagonalizableGroup, Element, FGAbelianGroup, Subgroup};
use crate::error::{Error, Result};
use crate::exactlin::{
    cokernel_presentation, congruence_kernel, reduce_by_hermite, reduce_mod, row_hermite_basis,
    solve_hermite, solve_integer, CokernelPresentation, IntMatrix,
};
use crate::grouptable::FiniteGroup;

/// Default cap on the number of cochain coordinates in one linear-algebra problem.
pub const DEFAULT_COHOMOLOGY_BUDGET: usize = 20_000;
/// Default number of tower levels tried by [`stabilized_h2`].
pub const DEFAULT_MAX_K: usize = 4;

/// A finite abelian group with a left action of a finite group.
#[derive(Clone, Debug)]
pub struct GammaModule {
    gamma: FiniteGroup,
    coeff: FGAbelianGroup,
    action: Vec<AbHom>,
}

impl GammaModule {
    /// `action[g]` is the automorphism by which `g` acts.
    pub fn new(gamma: FiniteGroup, coeff: FGAbelianGroup, action: Vec<AbHom>) -> Result<Self> {
        if !coeff.is_finite() {
            return Err(Error::invalid("coefficient group of a Gamma-module must be finite"));
        }
        if action.len() != gamma.order() {
            return Err(Error::DimensionMismatch {
                context: "Gamma-module action",
                expected: gamma.order(),
                found: action.len(),
            });
        }
        for (g, a) in action.iter().enumerate() {
            if *a.source() != coeff || *a.target() != coeff {
                return Err(Error::invalid(format!("action of element {g} is not an endomorphism of the coefficients")));
            }
        }
        if !action[gamma.identity()].is_identity() {
            return Err(Error::invalid("identity of gamma does not act trivially"));
        }
        for x in 0..gamma.order() {
            for y in 0..gamma.order() {
                if !action[gamma.mul(x, y)].same_map(&action[x].compose(&action[y])?) {
                    return Err(Error::invalid(format!(
                        "action is not a homomorphism at the pair ({x}, {y})"
                    )));
                }
            }
        }
        Ok(GammaModule { gamma, coeff, action })
    }

    pub fn trivial(gamma: FiniteGroup, coeff: FGAbelianGroup) -> Result<Self> {
        let action = vec![AbHom::identity(&coeff); gamma.order()];
        Self::new(gamma, coeff, action)
    }

    /// Extends the action of the generators of `gamma` along breadth-first words.
    pub fn from_generator_action(gamma: FiniteGroup, coeff: FGAbelianGroup, images: Vec<AbHom>) -> Result<Self> {
        let gens = gamma.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch {
                context: "generator action",
                expected: gens.len(),
                found: images.len(),
            });
        }
        let (reached, tree) = gamma.word_tree(&gens);
        if reached.iter().any(|r| !r) {
            return Err(Error::invalid("generators of gamma do not generate it"));
        }
        let mut action: Vec<Option<AbHom>> = vec![None; gamma.order()];
        action[gamma.identity()] = Some(AbHom::identity(&coeff));
        let mut pending: Vec<usize> = (0..gamma.order()).filter(|&x| x != gamma.identity()).collect();
        while !pending.is_empty() {
            let mut next = Vec::new();
            for x in pending {
                let (p, k) = tree[x].expect("non-identity element has a parent");
                match &action[p] {
                    Some(a) => action[x] = Some(a.compose(&images[k])?),
                    None => next.push(x),
                }
            }
            pending = next;
        }
        Self::new(gamma, coeff, action.into_iter().map(Option::unwrap).collect())
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn coeff(&self) -> &FGAbelianGroup {
        &self.coeff
    }

    pub fn action(&self, g: usize) -> &AbHom {
        &self.action[g]
    }

    pub fn act(&self, g: usize, x: &[BigInt]) -> Result<Element> {
        self.action[g].apply(x)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(AbHom::is_identity)
    }

    fn t(&self) -> usize {
        self.coeff.ngens()
    }

    fn non_identity(&self) -> Vec<usize> {
        (0..self.gamma.order()).filter(|&g| g != self.gamma.identity()).collect()
    }

    /// Position of each element among the non-identity elements.
    fn positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.gamma.order()];
        for (i, g) in self.non_identity().into_iter().enumerate() {
            pos[g] = Some(i);
        }
        pos
    }

    /// Number of coordinates of normalized `p`-cochains.
    pub fn normalized_dimension(&self, p: usize) -> usize {
        (self.gamma.order() - 1).pow(p as u32) * self.t()
    }

    /// Matrix of `d: C^p → C^{p+1}` on normalized coordinates (integral lift).
    pub fn differential_matrix(&self, p: usize) -> Result<IntMatrix> {
        if p > 2 {
            return Err(Error::invalid(format!("differential of degree {p} is not supported")));
        }
        let t = self.t();
        let m = self.gamma.order() - 1;
        let ne = self.non_identity();
        let pos = self.positions();
        let cols = m.pow(p as u32) * t;
        let rows = m.pow(p as u32 + 1) * t;
        let mut d = IntMatrix::zeros(rows, cols);
        let id = self.gamma.identity();
        // Adds sign·M (or sign·I when m is None) into block (row_block, col_block).
        let mut add_block = |rb: usize, cb: usize, sign: i64, mat: Option<&IntMatrix>| {
            for i in 0..t {
                for j in 0..t {
                    let v = match mat {
                        Some(a) => a.get(i, j).clone(),
                        None if i == j => BigInt::one(),
                        None => continue,
                    };
                    let cur = d.get(rb * t + i, cb * t + j) + v * sign;
                    d.set(rb * t + i, cb * t + j, cur);
                }
            }
        };
        let idx = |tuple: &[usize]| -> Option<usize> {
            tuple.iter().try_fold(0, |acc, &g| pos[g].map(|q| acc * m + q))
        };
        let g = &self.gamma;
        for (rb, tuple) in tuples(&ne, p + 1).into_iter().enumerate() {
            match p {
                0 => {
                    let g1 = tuple[0];
                    add_block(rb, 0, 1, Some(self.action[g1].matrix()));
                    add_block(rb, 0, -1, None);
                }
                1 => {
                    let (g1, g2) = (tuple[0], tuple[1]);
                    add_block(rb, idx(&[g1]).unwrap(), 1, None);
                    add_block(rb, idx(&[g2]).unwrap(), 1, Some(self.action[g1].matrix()));
                    let g12 = g.mul(g1, g2);
                    if g12 != id {
                        add_block(rb, idx(&[g12]).unwrap(), -1, None);
                    }
                }
                _ => {
                    let (g1, g2, g3) = (tuple[0], tuple[1], tuple[2]);
                    add_block(rb, idx(&[g2, g3]).unwrap(), 1, Some(self.action[g1].matrix()));
                    if let Some(c) = idx(&[g.mul(g1, g2), g3]) {
                        add_block(rb, c, -1, None);
                    }
                    if let Some(c) = idx(&[g1, g.mul(g2, g3)]) {
                        add_block(rb, c, 1, None);
                    }
                    add_block(rb, idx(&[g1, g2]).unwrap(), -1, None);
                }
            }
        }
        Ok(d)
    }

    /// Moduli of the normalized coordinates in degree `p`.
    fn coordinate_moduli(&self, p: usize) -> Vec<BigInt> {
        let q = self.coeff.moduli();
        let count = (self.gamma.order() - 1).pow(p as u32);
        (0..count).flat_map(|_| q.iter().cloned()).collect()
    }
}

/// All tuples of length `p` over `items`, first entry most significant.
fn tuples(items: &[usize], p: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// A function `Γᵖ → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    order: usize,
    values: Vec<Element>,
}

impl Cochain {
    pub fn zero(module: &GammaModule, degree: usize) -> Self {
        let order = module.gamma.order();
        Cochain {
            degree,
            order,
            values: vec![module.coeff.zero(); order.pow(degree as u32)],
        }
    }

    pub fn from_fn(module: &GammaModule, degree: usize, mut f: impl FnMut(&[usize]) -> Element) -> Result<Self> {
        let mut c = Self::zero(module, degree);
        let all: Vec<usize> = (0..c.order).collect();
        for (i, tuple) in tuples(&all, degree).into_iter().enumerate() {
            c.values[i] = module.coeff.reduce(&f(&tuple))?;
        }
        Ok(c)
    }

    /// Values listed in tuple-index order.
    pub fn from_values(module: &GammaModule, degree: usize, values: Vec<Element>) -> Result<Self> {
        let order = module.gamma.order();
        if values.len() != order.pow(degree as u32) {
            return Err(Error::DimensionMismatch {
                context: "cochain values",
                expected: order.pow(degree as u32),
                found: values.len(),
            });
        }
        let values = values
            .iter()
            .map(|v| module.coeff.reduce(v))
            .collect::<Result<_>>()?;
        Ok(Cochain { degree, order, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    pub fn value(&self, tuple: &[usize]) -> &Element {
        &self.values[self.index(tuple)]
    }

    pub fn set(&mut self, module: &GammaModule, tuple: &[usize], v: &[BigInt]) -> Result<()> {
        let i = self.index(tuple);
        self.values[i] = module.coeff.reduce(v)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self, module: &GammaModule) -> bool {
        let id = module.gamma.identity();
        let all: Vec<usize> = (0..self.order).collect();
        tuples(&all, self.degree)
            .into_iter()
            .zip(&self.values)
            .all(|(t, v)| !t.contains(&id) || v.iter().all(Zero::is_zero))
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.order != other.order {
            return Err(Error::invalid("cochains of different shapes"));
        }
        Ok(())
    }

    pub fn add(&self, module: &GammaModule, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| module.coeff.add(a, b))
            .collect::<Result<_>>()?;
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn sub(&self, module: &GammaModule, other: &Cochain) -> Result<Cochain> {
        self.add(module, &other.scale(module, &BigInt::from(-1))?)
    }

    pub fn scale(&self, module: &GammaModule, k: &BigInt) -> Result<Cochain> {
        let values = self
            .values
            .iter()
            .map(|a| module.coeff.scale(k, a))
            .collect::<Result<_>>()?;
        Ok(Cochain { values, ..self.clone() })
    }

    /// Applies a coefficient homomorphism value by value.
    pub fn map_values(&self, f: &AbHom) -> Result<Cochain> {
        let values = self.values.iter().map(|v| f.apply(v)).collect::<Result<_>>()?;
        Ok(Cochain { values, ..self.clone() })
    }

    /// Coordinates on non-identity tuples (the normalized part).
    fn normalized_vector(&self, module: &GammaModule) -> Vec<BigInt> {
        let ne = module.non_identity();
        tuples(&ne, self.degree)
            .into_iter()
            .flat_map(|t| self.value(&t).clone())
            .collect()
    }

    fn from_normalized_vector(module: &GammaModule, degree: usize, v: &[BigInt]) -> Result<Cochain> {
        let mut c = Cochain::zero(module, degree);
        let t = module.t();
        let ne = module.non_identity();
        for (k, tuple) in tuples(&ne, degree).into_iter().enumerate() {
            let value = &v[k * t..(k + 1) * t];
            c.set(module, &tuple, value)?;
        }
        Ok(c)
    }
}

/// Bar differential `C^p → C^{p+1}` for `p ≤ 2`.
pub fn differential(module: &GammaModule, c: &Cochain) -> Result<Cochain> {
    let g = &module.gamma;
    let coeff = &module.coeff;
    let act = |x: usize, v: &Element| module.act(x, v);
    match c.degree {
        0 => {
            let a = c.value(&[]);
            Cochain::from_fn(module, 1, |t| {
                let ga = act(t[0], a).expect("shape checked");
                coeff.add(&ga, &coeff.neg(a).unwrap()).unwrap()
            })
        }
        1 => Cochain::from_fn(module, 2, |t| {
            let (g1, g2) = (t[0], t[1]);
            let mut v = c.value(&[g1]).clone();
            v = coeff.add(&v, &act(g1, c.value(&[g2])).unwrap()).unwrap();
            coeff.add(&v, &coeff.neg(c.value(&[g.mul(g1, g2)])).unwrap()).unwrap()
        }),
        2 => Cochain::from_fn(module, 3, |t| {
            let (g1, g2, g3) = (t[0], t[1], t[2]);
            let mut v = act(g1, c.value(&[g2, g3])).unwrap();
            v = coeff.add(&v, &coeff.neg(c.value(&[g.mul(g1, g2), g3])).unwrap()).unwrap();
            v = coeff.add(&v, c.value(&[g1, g.mul(g2, g3)])).unwrap();
            coeff.add(&v, &coeff.neg(c.value(&[g1, g2])).unwrap()).unwrap()
        }),
        p => Err(Error::invalid(format!("differential of degree {p} is not supported"))),
    }
}

pub fn is_cocycle(module: &GammaModule, c: &Cochain) -> Result<bool> {
    Ok(differential(module, c)?.is_zero())
}

/// A cohomologous normalized cocycle and the `b` with `c − db` equal to it.
///
/// In degree 2 the correction is the constant function `b(γ) = c(1,1)`;
/// 1-cocycles already vanish at the identity.
pub fn normalize(module: &GammaModule, c: &Cochain) -> Result<(Cochain, Cochain)> {
    let id = module.gamma.identity();
    match c.degree {
        0 => Ok((c.clone(), Cochain::zero(module, 0))),
        1 => Ok((c.clone(), Cochain::zero(module, 0))),
        2 => {
            let c11 = c.value(&[id, id]).clone();
            let b = Cochain::from_fn(module, 1, |_| c11.clone())?;
            let db = differential(module, &b)?;
            Ok((c.sub(module, &db)?, b))
        }
        p => Err(Error::invalid(format!("normalization in degree {p} is not supported"))),
    }
}

/// An element of `Hᵖ` with its lexicographically minimal normalized representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    /// Coordinates in [`CohomologyGroup::group`].
    pub coordinates: Element,
    pub representative: Cochain,
}

/// `Hᵖ(Γ, A) = Z̃/B̃`, where `Z̃` and `B̃` are the integral lifts of normalized
/// cocycles and coboundaries (both contain the modulus relations).
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    module: GammaModule,
    degree: usize,
    group: FGAbelianGroup,
    cocycle_basis: IntMatrix,
    boundary_basis: IntMatrix,
    presentation: CokernelPresentation,
    generators: Vec<Cochain>,
}

/// Computes `Hᵖ(Γ, A)` for `p ∈ {0, 1, 2}`.
pub fn cohomology_group(module: &GammaModule, p: usize, budget: usize) -> Result<CohomologyGroup> {
    if p > 2 {
        return Err(Error::invalid(format!("cohomology in degree {p} is not supported")));
    }
    let size = module.normalized_dimension(p + 1) + module.normalized_dimension(p);
    if size > budget {
        return Err(Error::BudgetExceeded {
            what: "cochain coordinates",
            cap: budget,
        });
    }
    let n = module.normalized_dimension(p);
    let q = module.coordinate_moduli(p);
    let d = module.differential_matrix(p)?;
    let cocycle_basis = congruence_kernel(&d, &module.coordinate_moduli(p + 1))?;
    let mut gens = IntMatrix::diagonal(&q);
    if p > 0 {
        gens = gens.vstack(&module.differential_matrix(p - 1)?.transpose())?;
    }
    let boundary_basis = row_hermite_basis(&gens);
    if cocycle_basis.rows() != n || boundary_basis.rows() != n {
        return Err(Error::internal("cocycle or coboundary lattice is not of full rank"));
    }
    let mut rel = IntMatrix::zeros(n, n);
    for i in 0..n {
        let c = solve_hermite(&cocycle_basis, boundary_basis.row(i))?
            .ok_or_else(|| Error::internal("a coboundary is not a cocycle"))?;
        for (j, v) in c.into_iter().enumerate() {
            rel.set(i, j, v);
        }
    }
    let presentation = cokernel_presentation(&rel);
    if presentation.free_rank != 0 {
        return Err(Error::internal("cohomology of a finite module has a free part"));
    }
    let group = FGAbelianGroup::new(0, presentation.invariant_factors.clone())?;
    let mut h = CohomologyGroup {
        module: module.clone(),
        degree: p,
        group,
        cocycle_basis,
        boundary_basis,
        presentation,
        generators: Vec::new(),
    };
    h.generators = (0..h.group.ngens())
        .map(|i| {
            let mut e = h.group.zero();
            e[i] = BigInt::one();
            h.representative(&e)
        })
        .collect::<Result<_>>()?;
    Ok(h)
}

impl CohomologyGroup {
    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    /// Representatives of the canonical generators.
    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    /// Canonical representative of a normalized cochain vector modulo coboundaries.
    fn reduce_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_by_hermite(&self.boundary_basis, v)
    }

    /// Lexicographically minimal normalized cocycle in the class with these coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Result<Cochain> {
        let coords = self.group.reduce(coords)?;
        let n = self.cocycle_basis.cols();
        let mut in_basis = vec![BigInt::zero(); n];
        for (c, i) in coords.iter().zip(0..) {
            for (acc, l) in in_basis.iter_mut().zip(self.presentation.lift.row(i)) {
                *acc += c * l;
            }
        }
        let v = self.cocycle_basis.vec_mul(&in_basis)?;
        let v = self.reduce_vector(&v);
        Cochain::from_normalized_vector(&self.module, self.degree, &v)
    }

    /// Coordinates of the class of a cocycle (normalized first if needed).
    pub fn class_of(&self, c: &Cochain) -> Result<Element> {
        self.check_degree(c)?;
        if !is_cocycle(&self.module, c)? {
            return Err(Error::invalid("cochain is not a cocycle"));
        }
        let (c, _) = normalize(&self.module, c)?;
        let v = c.normalized_vector(&self.module);
        let in_basis = solve_hermite(&self.cocycle_basis, &v)?
            .ok_or_else(|| Error::internal("cocycle outside the cocycle lattice"))?;
        let raw = self.presentation.to_presented.vec_mul(&in_basis)?;
        Ok(reduce_mod(&raw, &self.presentation.moduli()))
    }

    pub fn class(&self, coords: &[BigInt]) -> Result<CohomologyClass> {
        let coordinates = self.group.reduce(coords)?;
        Ok(CohomologyClass {
            degree: self.degree,
            representative: self.representative(&coordinates)?,
            coordinates,
        })
    }

    /// Every class, in element-index order of [`group`](Self::group).
    pub fn classes(&self) -> Result<Vec<CohomologyClass>> {
        self.group.elements()?.iter().map(|e| self.class(e)).collect()
    }

    fn check_degree(&self, c: &Cochain) -> Result<()> {
        if c.degree != self.degree || c.order != self.module.gamma.order() {
            return Err(Error::invalid("cochain does not match the cohomology group"));
        }
        Ok(())
    }

    /// A normalized `b` with `db = c`, if `c` is a coboundary.
    pub fn coboundary_witness(&self, c: &Cochain) -> Result<Option<Cochain>> {
        self.check_degree(c)?;
        coboundary_witness(&self.module, c)
    }
}

/// A `b` with `db = c`, normalized when `c` is; `None` if `c` is no coboundary.
pub fn coboundary_witness(module: &GammaModule, c: &Cochain) -> Result<Option<Cochain>> {
    let p = c.degree;
    if p == 0 {
        return Ok(c.is_zero().then(|| c.clone()));
    }
    if p > 3 {
        return Err(Error::invalid(format!("coboundaries in degree {p} are not supported")));
    }
    let (c, shift) = if p == 2 {
        normalize(module, c)?
    } else {
        (c.clone(), Cochain::zero(module, p - 1))
    };
    if !c.is_normalized(module) {
        return Ok(None);
    }
    let n = module.normalized_dimension(p);
    let d = module.differential_matrix(p - 1)?;
    let q = module.coordinate_moduli(p);
    let system = d.hstack(&IntMatrix::diagonal(&q))?;
    let v = c.normalized_vector(module);
    let Some(sol) = solve_integer(&system, &v)? else {
        return Ok(None);
    };
    let b = Cochain::from_normalized_vector(module, p - 1, &sol[..d.cols()])?;
    debug_assert!(n == v.len());
    // c_original = c + d(shift) = d(b + shift)
    let b = if p == 2 { b.add(module, &shift)? } else { b };
    Ok(Some(b))
}

/// `c₁ − c₂ = db` for some `b`, returned as the witness.
pub fn cohomologous(module: &GammaModule, c1: &Cochain, c2: &Cochain) -> Result<Option<Cochain>> {
    coboundary_witness(module, &c1.sub(module, c2)?)
}

/// `|Γ|` kills every generator class: `|Γ|·c` is a coboundary.
pub fn eckmann_check(h: &CohomologyGroup) -> Result<bool> {
    let n = BigInt::from(h.module.gamma.order());
    for c in &h.generators {
        let nc = c.scale(&h.module, &n)?;
        if coboundary_witness(&h.module, &nc)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Γ-module `Z[N]` from character maps `S_γ` (`γ` acts by `φ ↦ φ ∘ S_γ`).
pub fn torsion_module(
    gamma: &FiniteGroup,
    z: &DiagonalizableGroup,
    character_maps: &[IntMatrix],
    level: &BigInt,
) -> Result<GammaModule> {
    let coeff = z.torsion_at(level)?;
    let action = character_maps
        .iter()
        .map(|s| z.precompose_action(s, level))
        .collect::<Result<Vec<_>>>()?;
    GammaModule::new(gamma.clone(), coeff, action)
}

/// One level `k` of the torsion tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub k: usize,
    /// `n^k` with `n = |Γ|`.
    pub level: BigInt,
    pub h2: FGAbelianGroup,
    /// Image of the comparison map from this level into the next one.
    pub image: FGAbelianGroup,
    /// Whether `H²` at this level maps isomorphically to the next level.
    pub comparison_is_isomorphism: bool,
    /// Whether the image at this level maps isomorphically onto the image at
    /// the next level; `None` on the last computed level.
    pub image_comparison_is_isomorphism: Option<bool>,
}

/// Stable value of `H²(Γ, Z[n^k])` along the tower.
#[derive(Clone, Debug)]
pub struct StableH2 {
    /// The stable group, realized inside `H²(Γ, Z[n^{k_used+1}])`.
    pub group: FGAbelianGroup,
    pub k_used: usize,
    pub cohomology: CohomologyGroup,
    /// Generators of `group` in coordinates of `cohomology.group()`.
    pub embedding: Vec<Element>,
    pub tower: Vec<TowerLevel>,
}

impl StableH2 {
    /// All stable classes, with representatives valued in `Z[n^{k_used+1}]`.
    pub fn classes(&self) -> Result<Vec<CohomologyClass>> {
        let h = &self.cohomology;
        self.group
            .elements()?
            .iter()
            .map(|x| {
                let mut e = h.group.zero();
                for (c, g) in x.iter().zip(&self.embedding) {
                    for (acc, v) in e.iter_mut().zip(g) {
                        *acc += c * v;
                    }
                }
                h.class(&e)
            })
            .collect()
    }

    pub fn level(&self) -> &BigInt {
        &self.tower[self.k_used].level
    }
}

struct Tower<'a> {
    gamma: &'a FiniteGroup,
    z: &'a DiagonalizableGroup,
    maps: &'a [IntMatrix],
    n: BigInt,
    budget: usize,
    /// Index `k − 1` holds `H²` at level `n^k`.
    groups: Vec<CohomologyGroup>,
    /// Index `k − 1` holds the comparison `H_k → H_{k+1}`.
    comparisons: Vec<AbHom>,
}

impl Tower<'_> {
    fn h(&mut self, k: usize) -> Result<&CohomologyGroup> {
        while self.groups.len() < k {
            let level = self.n.pow(self.groups.len() as u32 + 1);
            let module = torsion_module(self.gamma, self.z, self.maps, &level)?;
            self.groups.push(cohomology_group(&module, 2, self.budget)?);
        }
        Ok(&self.groups[k - 1])
    }

    fn phi(&mut self, k: usize) -> Result<&AbHom> {
        while self.comparisons.len() < k {
            let j = self.comparisons.len() + 1;
            self.h(j + 1)?;
            let (src, dst) = (&self.groups[j - 1], &self.groups[j]);
            let level = self.n.pow(j as u32);
            let inclusion = self.z.torsion_inclusion(&level, &self.n)?;
            let mut m = IntMatrix::zeros(dst.group.ngens(), src.group.ngens());
            for (col, c) in src.generators.iter().enumerate() {
                let pushed = Cochain::from_values(&dst.module, 2, c.map_values(&inclusion)?.values)?;
                for (row, v) in dst.class_of(&pushed)?.into_iter().enumerate() {
                    m.set(row, col, v);
                }
            }
            let f = AbHom::new(src.group.clone(), dst.group.clone(), m)?;
            self.comparisons.push(f);
        }
        Ok(&self.comparisons[k - 1])
    }

    /// `J_k = im(H_k → H_{k+1})`.
    fn image(&mut self, k: usize) -> Result<Subgroup> {
        self.phi(k)?.image()
    }

    /// `ψ_k : J_k → J_{k+1}` is bijective.
    fn psi_is_isomorphism(&mut self, k: usize) -> Result<bool> {
        let jk = self.image(k)?;
        let jk1 = self.image(k + 1)?;
        let phi = self.phi(k + 1)?.clone();
        let pushed: Vec<Element> = jk.generators.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?;
        let img = phi.target().subgroup(&pushed)?;
        Ok(img.group.order() == jk.group.order() && img.group.order() == jk1.group.order())
    }
}

/// Stable `H²(Γ, Z(G))` along the tower `Z[n^k]`, `n = |Γ|`.
///
/// `J_k` is the image of `H²(Γ, Z[n^k])` in `H²(Γ, Z[n^{k+1}])`. The search
/// stops at the first `k ≤ max_k` for which `J_k → J_{k+1}` and
/// `J_{k+1} → J_{k+2}` are both isomorphisms, and returns `J_k`.
pub fn stabilized_h2(
    gamma: &FiniteGroup,
    z: &DiagonalizableGroup,
    character_maps: &[IntMatrix],
    max_k: usize,
    budget: usize,
) -> Result<StableH2> {
    let mut tower = Tower {
        gamma,
        z,
        maps: character_maps,
        n: BigInt::from(gamma.order()),
        budget,
        groups: Vec::new(),
        comparisons: Vec::new(),
    };
    for k in 1..=max_k {
        if tower.psi_is_isomorphism(k)? && tower.psi_is_isomorphism(k + 1)? {
            let jk = tower.image(k)?;
            let levels = tower.comparisons.len();
            let mut report = Vec::with_capacity(levels);
            for j in 1..=levels {
                let phi = tower.phi(j)?.clone();
                let psi = if j < levels {
                    Some(tower.psi_is_isomorphism(j)?)
                } else {
                    None
                };
                report.push(TowerLevel {
                    k: j,
                    level: tower.n.pow(j as u32),
                    h2: phi.source().clone(),
                    image: phi.image()?.group,
                    comparison_is_isomorphism: phi.is_isomorphism()?,
                    image_comparison_is_isomorphism: psi,
                });
            }
            return Ok(StableH2 {
                group: jk.group,
                k_used: k,
                cohomology: tower.groups[k].clone(),
                embedding: jk.generators,
                tower: report,
            });
        }
    }
    Err(Error::BudgetExceeded {
        what: "torsion tower levels",
        cap: max_k,
    })
}
