//! Extensions of a finite group by a finite module, and finite models of the
//! pushout `[G ⋊ Ẽ] / {(z, z⁻¹)}`.

use num_bigint::BigInt;

use crate::abgroup::Element;
use crate::autbrd::{validate_ad, AdHom};
use crate::cohomology::{
    cohomologous, is_cocycle, stabilized_h2, Cochain, CohomologyClass, GammaModule, StableH2,
    eckmann_check,
};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::grouptable::{find_isomorphism, hom_violation_into_aut, FiniteGroup, Perm};
use crate::rootdatum::{BasedRootDatum, Center, RootDatum};

/// `E = A × Γ` as a set with `(a₁,γ₁)(a₂,γ₂) = (a₁ + γ₁·a₂ + c(γ₁,γ₂), γ₁γ₂)`.
/// Element `(a, γ)` has index `γ·|A| + index(a)`.
#[derive(Clone, Debug)]
pub struct ExtensionTable {
    group: FiniteGroup,
    module: GammaModule,
    cocycle: Cochain,
    a_elements: Vec<Element>,
}

/// Multiplication table of the extension defined by a normalized 2-cochain.
///
/// The table is a group exactly when `c` is a cocycle; otherwise the first
/// failing triple is returned as [`Error::Associativity`].
pub fn build_extension(module: &GammaModule, c: &Cochain) -> Result<ExtensionTable> {
    if c.degree() != 2 {
        return Err(Error::invalid("extensions are built from 2-cochains"));
    }
    if !c.is_normalized(module) {
        return Err(Error::invalid("cocycle must vanish when an argument is the identity"));
    }
    let coeff = module.coeff();
    let a_elements = coeff.elements()?;
    let na = a_elements.len();
    let gamma = module.gamma();
    let n = na * gamma.order();
    // γ·a as an index table.
    let mut act = vec![vec![0; na]; gamma.order()];
    for (g, row) in act.iter_mut().enumerate() {
        for (i, a) in a_elements.iter().enumerate() {
            row[i] = coeff.element_index(&module.act(g, a)?)?;
        }
    }
    let mut add = vec![vec![0; na]; na];
    for i in 0..na {
        for j in 0..na {
            add[i][j] = coeff.element_index(&coeff.add(&a_elements[i], &a_elements[j])?)?;
        }
    }
    let cidx: Vec<usize> = c
        .values()
        .iter()
        .map(|v| coeff.element_index(v))
        .collect::<Result<_>>()?;
    let order = gamma.order();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a1, g1) = (x % na, x / na);
        for y in 0..n {
            let (a2, g2) = (y % na, y / na);
            let a = add[add[a1][act[g1][a2]]][cidx[g1 * order + g2]];
            table[x * n + y] = (gamma.mul(g1, g2) * na + a) as u32;
        }
    }
    let zero = coeff.element_index(&coeff.zero())?;
    let identity = gamma.identity() * na + zero;
    let mut gens: Vec<usize> = (0..coeff.ngens())
        .map(|i| {
            let mut e = coeff.zero();
            e[i] = BigInt::from(1);
            coeff.element_index(&e).map(|k| gamma.identity() * na + k)
        })
        .collect::<Result<_>>()?;
    gens.extend(gamma.generators().iter().map(|&g| g * na + zero));
    let group = FiniteGroup::assemble(n, table, identity, gens);
    group.check_associative()?;
    Ok(ExtensionTable {
        group,
        module: module.clone(),
        cocycle: c.clone(),
        a_elements,
    })
}

impl ExtensionTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn a_order(&self) -> usize {
        self.a_elements.len()
    }

    pub fn a_elements(&self) -> &[Element] {
        &self.a_elements
    }

    pub fn element(&self, a: usize, gamma: usize) -> usize {
        gamma * self.a_order() + a
    }

    /// `a ↦ (a, 1)`, indexed like [`a_elements`](Self::a_elements).
    pub fn embedding(&self) -> Vec<usize> {
        let id = self.module.gamma().identity();
        (0..self.a_order()).map(|a| self.element(a, id)).collect()
    }

    /// `(a, γ) ↦ γ`.
    pub fn projection(&self) -> Vec<usize> {
        (0..self.group.order()).map(|x| x / self.a_order()).collect()
    }

    /// `γ ↦ (0, γ)`.
    pub fn canonical_section(&self) -> Vec<usize> {
        let zero = self
            .module
            .coeff()
            .element_index(&self.module.coeff().zero())
            .expect("zero is an element");
        (0..self.module.gamma().order()).map(|g| self.element(zero, g)).collect()
    }

    /// Checks exactness of `A → E → Γ` and that conjugation by `(0, γ)` on the
    /// embedded `A` is the module action.
    pub fn verify(&self) -> Result<()> {
        let emb = self.embedding();
        let proj = self.projection();
        let gamma = self.module.gamma();
        let mut hit = vec![false; gamma.order()];
        for &p in &proj {
            hit[p] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::internal("projection is not surjective"));
        }
        let kernel: Vec<usize> = (0..self.group.order()).filter(|&x| proj[x] == gamma.identity()).collect();
        let mut image = emb.clone();
        image.sort_unstable();
        if kernel != image {
            return Err(Error::internal("kernel of the projection is not the embedded module"));
        }
        let coeff = self.module.coeff();
        for (g, &s) in self.canonical_section().iter().enumerate() {
            let si = self.group.inv(s);
            for (a, x) in self.a_elements.iter().enumerate() {
                let conj = self.group.mul(self.group.mul(s, emb[a]), si);
                let expected = emb[coeff.element_index(&self.module.act(g, x)?)?];
                if conj != expected {
                    return Err(Error::internal(format!(
                        "conjugation by the lift of {g} does not match the module action"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `c(γ₁,γ₂) = s(γ₁) s(γ₂) s(γ₁γ₂)⁻¹` read back through the embedding.
///
/// `embedding[i]` is the image of the `i`-th element of the coefficient group
/// (in [`FGAbelianGroup::elements`](crate::abgroup::FGAbelianGroup::elements) order).
pub fn extract_cocycle(
    e: &FiniteGroup,
    module: &GammaModule,
    embedding: &[usize],
    projection: &[usize],
    section: &[usize],
) -> Result<Cochain> {
    let gamma = module.gamma();
    if section.len() != gamma.order() || projection.len() != e.order() {
        return Err(Error::DimensionMismatch {
            context: "section or projection",
            expected: gamma.order(),
            found: section.len(),
        });
    }
    for (g, &s) in section.iter().enumerate() {
        if s >= e.order() || projection[s] != g {
            return Err(Error::invalid(format!("section value for {g} lies over a different element")));
        }
    }
    if section[gamma.identity()] != e.identity() {
        return Err(Error::invalid("section must send the identity to the identity"));
    }
    let mut back = vec![None; e.order()];
    for (i, &x) in embedding.iter().enumerate() {
        back[x] = Some(i);
    }
    let elements = module.coeff().elements()?;
    let mut c = Cochain::zero(module, 2);
    for g1 in 0..gamma.order() {
        for g2 in 0..gamma.order() {
            let prod = e.mul(section[g1], section[g2]);
            let x = e.mul(prod, e.inv(section[gamma.mul(g1, g2)]));
            let i = back[x].ok_or_else(|| {
                Error::invalid(format!(
                    "s({g1})s({g2})s({g1}{g2})^-1 is not in the embedded module"
                ))
            })?;
            c.set(module, &[g1, g2], &elements[i])?;
        }
    }
    if !is_cocycle(module, &c)? {
        return Err(Error::invalid(
            "extracted cochain is not a cocycle: conjugation does not match the module action",
        ));
    }
    Ok(c)
}

/// `c₁ − c₂ = db`, solved exactly; returns `b` when the extensions are equivalent.
pub fn extensions_equivalent(e1: &ExtensionTable, e2: &ExtensionTable) -> Result<Option<Cochain>> {
    check_same_module(&e1.module, &e2.module)?;
    cohomologous(&e1.module, &e1.cocycle, &e2.cocycle)
}

fn check_same_module(m1: &GammaModule, m2: &GammaModule) -> Result<()> {
    let same = m1.gamma() == m2.gamma()
        && m1.coeff() == m2.coeff()
        && (0..m1.gamma().order()).all(|g| m1.action(g).same_map(m2.action(g)));
    if same {
        Ok(())
    } else {
        Err(Error::invalid("extensions are over different modules"))
    }
}

/// Exhaustive search for an isomorphism `E₁ → E₂` that is the identity on `A`
/// and compatible with the projections. Such a map sends `(0, γ)` to
/// `(b(γ), γ)`, so the search runs over normalized maps `b: Γ → A`.
pub fn equivalence_by_search(e1: &ExtensionTable, e2: &ExtensionTable) -> Result<Option<Vec<usize>>> {
    check_same_module(&e1.module, &e2.module)?;
    let gamma = e1.module.gamma();
    let na = e1.a_order();
    let others: Vec<usize> = (0..gamma.order()).filter(|&g| g != gamma.identity()).collect();
    let emb2 = e2.embedding();
    let zero = e1.canonical_section()[gamma.identity()] % na;
    let mut b = vec![zero; gamma.order()];
    let total = na.checked_pow(others.len() as u32).ok_or(Error::BudgetExceeded {
        what: "equivalence search",
        cap: usize::MAX,
    })?;
    for code in 0..total {
        let mut rest = code;
        for &g in &others {
            b[g] = rest % na;
            rest /= na;
        }
        let f: Vec<usize> = (0..e1.group.order())
            .map(|x| {
                let (a, g) = (x % na, x / na);
                e2.group.mul(emb2[a], e2.element(b[g], g))
            })
            .collect();
        let ok = (0..f.len()).all(|x| (0..f.len()).all(|y| f[e1.group.mul(x, y)] == e2.group.mul(f[x], f[y])));
        if ok {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// A finite model of `[G ⋊ Ẽ] / {(ι(z), ι̃(z)⁻¹)}`.
#[derive(Clone, Debug)]
pub struct Pushout {
    /// `G ⋊ Ẽ`, element `(g, e)` at index `e·|G| + g`.
    pub semidirect: FiniteGroup,
    /// Sorted indices of the antidiagonal in `semidirect`.
    pub antidiagonal: Vec<usize>,
    pub group: FiniteGroup,
    /// Quotient map `semidirect → group`.
    pub quotient_map: Vec<usize>,
    /// `g ↦ image of (g, 1)`.
    pub g_embedding: Vec<usize>,
    /// `E → Γ` induced by `(g, (a, γ)) ↦ γ`.
    pub gamma_projection: Vec<usize>,
}

/// Data for [`pushout`].
#[derive(Clone, Debug)]
pub struct PushoutInput {
    pub g_model: FiniteGroup,
    /// `ι: A → G`, indexed like the coefficient elements; its image is `Z`.
    pub iota: Vec<usize>,
    pub etilde: ExtensionTable,
    /// Automorphism of `G` for each element of `Ẽ`.
    pub act: Vec<Perm>,
}

impl PushoutInput {
    /// `act(a, γ) = α(γ)`; valid when `ι(A)` is central.
    pub fn with_gamma_action(g_model: FiniteGroup, iota: Vec<usize>, etilde: ExtensionTable, alpha: &[Perm]) -> Self {
        let act = etilde.projection().iter().map(|&g| alpha[g].clone()).collect();
        PushoutInput {
            g_model,
            iota,
            etilde,
            act,
        }
    }

    fn check(&self) -> Result<()> {
        let g = &self.g_model;
        let et = &self.etilde;
        let coeff = et.module.coeff();
        if self.iota.len() != et.a_order() {
            return Err(Error::DimensionMismatch {
                context: "iota",
                expected: et.a_order(),
                found: self.iota.len(),
            });
        }
        let elements = et.a_elements();
        for i in 0..elements.len() {
            for j in 0..elements.len() {
                let sum = coeff.element_index(&coeff.add(&elements[i], &elements[j])?)?;
                if self.iota[sum] != g.mul(self.iota[i], self.iota[j]) {
                    return Err(Error::invalid(format!("iota is not a homomorphism at ({i}, {j})")));
                }
            }
        }
        let mut seen = vec![false; g.order()];
        for &z in &self.iota {
            if seen[z] {
                return Err(Error::invalid("iota is not injective"));
            }
            seen[z] = true;
        }
        for (i, &z) in self.iota.iter().enumerate() {
            if let Some(x) = (0..g.order()).find(|&x| g.mul(z, x) != g.mul(x, z)) {
                return Err(Error::invalid(format!(
                    "Z is not central: iota({i}) does not commute with element {x}"
                )));
            }
        }
        if self.act.len() != et.group.order() {
            return Err(Error::DimensionMismatch {
                context: "pushout action",
                expected: et.group.order(),
                found: self.act.len(),
            });
        }
        for (k, a) in self.act.iter().enumerate() {
            if !g.is_automorphism(a) {
                return Err(Error::invalid(format!("act({k}) is not an automorphism of G")));
            }
        }
        if let Some((x, y)) = hom_violation_into_aut(&et.group, g, &self.act) {
            return Err(Error::invalid(format!("act is not a homomorphism at ({x}, {y})")));
        }
        for (i, &e) in et.embedding().iter().enumerate() {
            if self.act[e] != g.conjugation(self.iota[i]) {
                return Err(Error::invalid(format!(
                    "embedded element {i} does not act by conjugation with iota({i})"
                )));
            }
        }
        Ok(())
    }
}

/// Forms `G ⋊ Ẽ`, checks the antidiagonal is normal and returns the quotient,
/// with the structural assertions `|E| = |G|·|Γ|`, `G ↪ E` and `E/G ≅ Γ`.
pub fn pushout(input: &PushoutInput) -> Result<Pushout> {
    input.check()?;
    let g = &input.g_model;
    let et = &input.etilde;
    let ng = g.order();
    let semidirect = FiniteGroup::semidirect_product(g, &et.group, &input.act)?;
    let emb = et.embedding();
    let mut antidiagonal: Vec<usize> = (0..et.a_order())
        .map(|i| et.group.inv(emb[i]) * ng + input.iota[i])
        .collect();
    antidiagonal.sort_unstable();
    if let Some((x, n)) = semidirect.normality_violation(&antidiagonal) {
        return Err(Error::invalid(format!(
            "antidiagonal is not normal: conjugating {n} by {x} leaves it"
        )));
    }
    let (group, quotient_map) = semidirect.quotient(&antidiagonal)?;
    let gamma = et.module.gamma();
    if group.order() != ng * gamma.order() {
        return Err(Error::internal("pushout has the wrong order"));
    }
    let e_id = et.group.identity();
    let g_embedding: Vec<usize> = (0..ng).map(|x| quotient_map[e_id * ng + x]).collect();
    let mut seen = vec![false; group.order()];
    for &x in &g_embedding {
        if seen[x] {
            return Err(Error::internal("G does not embed in the pushout"));
        }
        seen[x] = true;
    }
    let et_proj = et.projection();
    let mut gamma_projection = vec![usize::MAX; group.order()];
    for s in 0..semidirect.order() {
        let img = et_proj[s / ng];
        let q = quotient_map[s];
        if gamma_projection[q] != usize::MAX && gamma_projection[q] != img {
            return Err(Error::internal("projection to gamma is not well defined on the pushout"));
        }
        gamma_projection[q] = img;
    }
    if crate::grouptable::hom_violation(&gamma_projection, &group, gamma).is_some() {
        return Err(Error::internal("projection to gamma is not a homomorphism"));
    }
    let mut kernel: Vec<usize> = (0..group.order())
        .filter(|&x| gamma_projection[x] == gamma.identity())
        .collect();
    kernel.sort_unstable();
    let mut image = g_embedding.clone();
    image.sort_unstable();
    if kernel != image {
        return Err(Error::internal("kernel of E -> gamma is not the image of G"));
    }
    Ok(Pushout {
        semidirect,
        antidiagonal,
        group,
        quotient_map,
        g_embedding,
        gamma_projection,
    })
}

/// Result of [`multiplication_kernel_check`].
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// `E` built directly: `(g₁,γ₁)(g₂,γ₂) = (g₁ · α(γ₁)(g₂) · ι(c(γ₁,γ₂)), γ₁γ₂)`.
    pub direct: FiniteGroup,
    /// Sorted kernel of the multiplication map `G ⋊ Ẽ → E`.
    pub kernel: Vec<usize>,
    pub kernel_is_antidiagonal: bool,
    /// `E` from the direct construction is isomorphic to the pushout quotient.
    pub matches_quotient: bool,
}

/// Builds `E` independently from `G`, the lifts `α(γ) = act(0, γ)` and `ι∘c`,
/// and checks that `(g, (a, γ)) ↦ (g·ι(a), γ)` is a surjective homomorphism
/// from `G ⋊ Ẽ` whose kernel is exactly the antidiagonal.
pub fn multiplication_kernel_check(input: &PushoutInput, p: &Pushout) -> Result<KernelReport> {
    let g = &input.g_model;
    let et = &input.etilde;
    let gamma = et.module.gamma();
    let ng = g.order();
    let section = et.canonical_section();
    let coeff = et.module.coeff();
    let cvals: Vec<usize> = et
        .cocycle
        .values()
        .iter()
        .map(|v| coeff.element_index(v).map(|i| input.iota[i]))
        .collect::<Result<_>>()?;
    let n = ng * gamma.order();
    let go = gamma.order();
    let direct = FiniteGroup::from_fn(n, gamma.identity() * ng + g.identity(), Vec::new(), |x, y| {
        let (g1, r1) = (x % ng, x / ng);
        let (g2, r2) = (y % ng, y / ng);
        let twisted = input.act[section[r1]][g2];
        let prod = g.mul(g.mul(g1, twisted), cvals[r1 * go + r2]);
        gamma.mul(r1, r2) * ng + prod
    })?;
    let na = et.a_order();
    let m: Vec<usize> = (0..p.semidirect.order())
        .map(|s| {
            let (x, e) = (s % ng, s / ng);
            let (a, r) = (e % na, e / na);
            r * ng + g.mul(x, input.iota[a])
        })
        .collect();
    let is_hom = crate::grouptable::hom_check(&m, &p.semidirect, &direct);
    let mut hit = vec![false; n];
    for &x in &m {
        hit[x] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    let kernel: Vec<usize> = (0..m.len()).filter(|&s| m[s] == direct.identity()).collect();
    let kernel_is_antidiagonal = is_hom && surjective && kernel == p.antidiagonal;
    let matches_quotient = find_isomorphism(&p.group, &direct).is_some();
    Ok(KernelReport {
        direct,
        kernel,
        kernel_is_antidiagonal,
        matches_quotient,
    })
}

/// Result of [`quotient_mod_center`].
#[derive(Clone, Debug)]
pub struct CenterQuotientReport {
    /// `E / ι(Z)`.
    pub quotient: FiniteGroup,
    /// `(G/Z) ⋊ Γ` with `Γ` acting through `α(γ) = act(0, γ)`.
    pub model: FiniteGroup,
    /// An isomorphism `quotient → model` found by exhaustive search.
    pub isomorphism: Option<Vec<usize>>,
}

/// `E/Z` next to `(G/Z) ⋊ Γ`, compared by brute-force isomorphism search.
pub fn quotient_mod_center(input: &PushoutInput, p: &Pushout) -> Result<CenterQuotientReport> {
    let g = &input.g_model;
    let et = &input.etilde;
    let gamma = et.module.gamma();
    let z_in_e: Vec<usize> = {
        let mut v: Vec<usize> = input.iota.iter().map(|&z| p.g_embedding[z]).collect();
        v.sort_unstable();
        v
    };
    let (quotient, _) = p.group.quotient(&z_in_e)?;
    let mut z_in_g = input.iota.clone();
    z_in_g.sort_unstable();
    let (gz, proj) = g.quotient(&z_in_g)?;
    let section = et.canonical_section();
    // A representative of each coset of Z in G.
    let mut rep = vec![usize::MAX; gz.order()];
    for x in 0..g.order() {
        if rep[proj[x]] == usize::MAX {
            rep[proj[x]] = x;
        }
    }
    let action: Vec<Perm> = (0..gamma.order())
        .map(|r| {
            let a = &input.act[section[r]];
            (0..gz.order()).map(|c| proj[a[rep[c]]]).collect()
        })
        .collect();
    let model = FiniteGroup::semidirect_product(&gz, gamma, &action)?;
    let isomorphism = find_isomorphism(&quotient, &model);
    Ok(CenterQuotientReport {
        quotient,
        model,
        isomorphism,
    })
}

/// The classification datum for one disconnected group: `(G, Γ, Ad, class)`.
#[derive(Clone, Debug)]
pub struct DisconnectedGroupDescriptor {
    pub root_datum: RootDatum,
    pub gamma: FiniteGroup,
    pub ad: AdHom,
    pub h2_class: CohomologyClass,
    /// The trivial class, i.e. the split extension `G ⋊ Γ`.
    pub split: bool,
}

/// Everything computed by [`classify`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub center: Center,
    /// `S_γ = T̄_γ⁻¹` on `X*/ℤR`: `γ` acts on `Z(G)` by `φ ↦ φ ∘ S_γ`.
    pub character_maps: Vec<IntMatrix>,
    pub stable: StableH2,
    pub eckmann: bool,
    pub descriptors: Vec<DisconnectedGroupDescriptor>,
}

/// Center, induced action, stable `H²` and one descriptor per class.
pub fn classify(based: &BasedRootDatum, ad: &AdHom, max_k: usize, budget: usize) -> Result<Classification> {
    if let Err(v) = validate_ad(based, ad)? {
        return Err(Error::invalid(format!("Ad is invalid: {v}")));
    }
    let center = based.datum().center();
    let character_maps = ad
        .images()
        .iter()
        .map(|t| {
            let inv = t
                .inverse()
                .ok_or_else(|| Error::invalid("Ad image is not invertible"))?;
            center.induced_quotient_map(&inv)
        })
        .collect::<Result<Vec<_>>>()?;
    let stable = stabilized_h2(ad.gamma(), &center.group, &character_maps, max_k, budget)?;
    let eckmann = eckmann_check(&stable.cohomology)?;
    if !eckmann {
        return Err(Error::internal("|Gamma| does not annihilate H^2"));
    }
    let descriptors = stable
        .classes()?
        .into_iter()
        .map(|class| DisconnectedGroupDescriptor {
            root_datum: based.datum().clone(),
            gamma: ad.gamma().clone(),
            ad: ad.clone(),
            split: class.representative.is_zero(),
            h2_class: class,
        })
        .collect();
    Ok(Classification {
        center,
        character_maps,
        stable,
        eckmann,
        descriptors,
    })
}
