//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use disconnected_core::abgroup::{AbHom, FGAbelianGroup};
use disconnected_core::cohomology::{cohomology_group, GammaModule, DEFAULT_COHOMOLOGY_BUDGET};
use disconnected_core::exactlin::IntMatrix;
use disconnected_core::extension::{build_extension, PushoutInput};
use disconnected_core::grouptable::{compose, FiniteGroup, Perm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

// ------------------------------------------------------------ SNF oracle

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors `d_k / d_{k−1}` from gcds of `k × k` minors, with zeros
/// past the rank, `min(rows, cols)` entries in all.
pub fn determinantal_invariants(m: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) + 1 - k));
            return out;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

// ------------------------------------------------------------ cohomology oracle

/// A finite module given in ambient coordinates `⊕ ℤ/mᵢ`.
#[derive(Clone, Debug)]
pub struct RawModule {
    pub gamma: FiniteGroup,
    pub moduli: Vec<u64>,
    /// Action matrices on ambient coordinates, one per generator of `gamma`.
    pub generator_action: Vec<Vec<Vec<i64>>>,
}

/// Element tables of a raw module: index ↔ mixed-radix coordinates.
pub struct Tables {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    /// `act[g][a]`
    pub act: Vec<Vec<usize>>,
    pub gamma: FiniteGroup,
}

fn coords(mut i: usize, moduli: &[u64]) -> Vec<i64> {
    moduli
        .iter()
        .map(|&m| {
            let c = (i % m as usize) as i64;
            i /= m as usize;
            c
        })
        .collect()
}

fn index(c: &[i64], moduli: &[u64]) -> usize {
    let mut i = 0usize;
    for (v, &m) in c.iter().zip(moduli).rev() {
        i = i * m as usize + v.rem_euclid(m as i64) as usize;
    }
    i
}

impl RawModule {
    pub fn tables(&self) -> Tables {
        let size: usize = self.moduli.iter().map(|&m| m as usize).product();
        let mut add = vec![vec![0; size]; size];
        let mut neg = vec![0; size];
        for i in 0..size {
            let ci = coords(i, &self.moduli);
            neg[i] = index(&ci.iter().map(|v| -v).collect::<Vec<_>>(), &self.moduli);
            for j in 0..size {
                let cj = coords(j, &self.moduli);
                let s: Vec<i64> = ci.iter().zip(&cj).map(|(a, b)| a + b).collect();
                add[i][j] = index(&s, &self.moduli);
            }
        }
        let gen_perms: Vec<Vec<usize>> = self
            .generator_action
            .iter()
            .map(|m| {
                (0..size)
                    .map(|i| {
                        let c = coords(i, &self.moduli);
                        let img: Vec<i64> = m.iter().map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
                        index(&img, &self.moduli)
                    })
                    .collect()
            })
            .collect();
        let act = extend_perm_action(&self.gamma, &gen_perms);
        Tables {
            size,
            add,
            neg,
            act,
            gamma: self.gamma.clone(),
        }
    }

    /// The same data as a library module, converting matrices to canonical coordinates.
    pub fn module(&self) -> GammaModule {
        let moduli: Vec<BigInt> = self.moduli.iter().map(|&m| BigInt::from(m)).collect();
        let coeff = FGAbelianGroup::from_cyclic_orders(&moduli);
        let images = self
            .generator_action
            .iter()
            .map(|m| {
                let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
                canonical_hom(&coeff, &IntMatrix::from_i64(&rows))
            })
            .collect();
        GammaModule::from_generator_action(self.gamma.clone(), coeff, images).expect("valid module")
    }
}

/// Conjugates an ambient matrix into canonical coordinates.
pub fn canonical_hom(coeff: &FGAbelianGroup, ambient: &IntMatrix) -> AbHom {
    let m = match coeff.ambient_basis() {
        Some(b) => b
            .from_ambient
            .checked_mul(ambient)
            .and_then(|x| x.checked_mul(&b.to_ambient))
            .expect("shapes"),
        None => ambient.clone(),
    };
    AbHom::new(coeff.clone(), coeff.clone(), m).expect("action respects relations")
}

/// Left action from generator images: `act(x·g) = act(x) ∘ act(g)`.
pub fn extend_perm_action(gamma: &FiniteGroup, gen_perms: &[Perm]) -> Vec<Perm> {
    let size = gen_perms.first().map_or(0, |p| p.len());
    let (_, tree) = gamma.word_tree(gamma.generators());
    let mut out: Vec<Option<Perm>> = vec![None; gamma.order()];
    out[gamma.identity()] = Some((0..size).collect());
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..gamma.order() {
            if out[x].is_none() {
                if let Some((p, k)) = tree[x] {
                    if let Some(parent) = out[p].clone() {
                        out[x] = Some(compose(&parent, &gen_perms[k]));
                        changed = true;
                    }
                }
            }
        }
    }
    let id: Perm = (0..size).collect();
    out.into_iter().map(|p| p.unwrap_or_else(|| id.clone())).collect()
}

/// Order and `#{h : d·h = 0}` for each `d` in `divisors`; determines a finite
/// abelian group up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub order: u64,
    pub torsion: Vec<(u64, u64)>,
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn census_of(g: &FGAbelianGroup, divs: &[u64]) -> Census {
    assert_eq!(g.free_rank(), 0);
    let f: Vec<u64> = g.invariant_factors().iter().map(|x| u64::try_from(x).unwrap()).collect();
    Census {
        order: f.iter().product(),
        torsion: divs
            .iter()
            .map(|&d| (d, f.iter().map(|&x| x.gcd(&d)).product()))
            .collect(),
    }
}

fn census_from(cocycles: &[Vec<usize>], boundaries: &HashSet<Vec<usize>>, t: &Tables, divs: &[u64]) -> Census {
    let scale = |c: &[usize], d: u64| -> Vec<usize> {
        c.iter()
            .map(|&a| {
                let mut acc = 0usize;
                // identity element is index 0 in mixed radix
                for _ in 0..d {
                    acc = t.add[acc][a];
                }
                acc
            })
            .collect()
    };
    let order = (cocycles.len() / boundaries.len()) as u64;
    assert_eq!(cocycles.len() % boundaries.len(), 0);
    let torsion = divs
        .iter()
        .map(|&d| {
            let k = cocycles.iter().filter(|c| boundaries.contains(&scale(c, d))).count();
            (d, (k / boundaries.len()) as u64)
        })
        .collect();
    Census { order, torsion }
}

fn all_maps(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = size.pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = code % size;
                code /= size;
                v
            })
            .collect()
    })
}

/// `δb(g,h) = g·b(h) − b(gh) + b(g)` on a full table indexed `g·n + h`.
fn coboundary1(t: &Tables, b: &[usize]) -> Vec<usize> {
    let g = &t.gamma;
    let n = g.order();
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = t.add[t.add[t.act[x][b[y]]][t.neg[b[g.mul(x, y)]]]][b[x]];
            out[x * n + y] = v;
        }
    }
    out
}

fn cocycle_defect(t: &Tables, c: &[usize], x: usize, y: usize, z: usize) -> usize {
    let g = &t.gamma;
    let n = g.order();
    let a = t.act[x][c[y * n + z]];
    let b = t.neg[c[g.mul(x, y) * n + z]];
    let d = c[x * n + g.mul(y, z)];
    let e = t.neg[c[x * n + y]];
    t.add[t.add[t.add[a][b]][d]][e]
}

/// `H¹` by enumerating all maps `Γ → A`.
pub fn brute_h1(raw: &RawModule) -> Census {
    let t = raw.tables();
    let g = &t.gamma;
    let n = g.order();
    let cocycles: Vec<Vec<usize>> = all_maps(n, t.size)
        .filter(|f| (0..n).all(|x| (0..n).all(|y| f[g.mul(x, y)] == t.add[f[x]][t.act[x][f[y]]])))
        .collect();
    let boundaries: HashSet<Vec<usize>> = (0..t.size)
        .map(|a| (0..n).map(|x| t.add[t.act[x][a]][t.neg[a]]).collect())
        .collect();
    census_from(&cocycles, &boundaries, &t, &divisors(exponent(&raw.moduli)))
}

fn exponent(moduli: &[u64]) -> u64 {
    moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
}

pub const FULL_ENUMERATION_LIMIT: u64 = 1_000_000;

/// Whether [`brute_h2`] enumerates every map `Γ² → A`.
pub fn full_enumeration(raw: &RawModule) -> bool {
    let size: u64 = raw.moduli.iter().product();
    let n = raw.gamma.order() as u32;
    size.checked_pow(n * n).is_some_and(|v| v <= FULL_ENUMERATION_LIMIT)
}

/// `H²` by enumeration: all maps `Γ² → A` when `|A|^{|Γ|²} ≤ 10⁶`, otherwise
/// a backtracking enumeration of normalized cochains (pruned by the cocycle
/// identity), with coboundaries from all normalized maps `Γ → A`.
pub fn brute_h2(raw: &RawModule) -> Census {
    if full_enumeration(raw) {
        brute_h2_full(raw)
    } else {
        brute_h2_normalized(raw)
    }
}

pub fn brute_h2_full(raw: &RawModule) -> Census {
    let t = raw.tables();
    let n = t.gamma.order();
    let cocycles: Vec<Vec<usize>> = all_maps(n * n, t.size)
        .filter(|c| (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| cocycle_defect(&t, c, x, y, z) == 0))))
        .collect();
    let boundaries: HashSet<Vec<usize>> = all_maps(n, t.size).map(|b| coboundary1(&t, &b)).collect();
    census_from(&cocycles, &boundaries, &t, &divisors(exponent(&raw.moduli)))
}

pub fn brute_h2_normalized(raw: &RawModule) -> Census {
    let t = raw.tables();
    let g = &t.gamma;
    let n = g.order();
    let id = g.identity();
    let free = |k: usize| k / n != id && k % n != id;
    let mut triples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let touched = [y * n + z, g.mul(x, y) * n + z, x * n + g.mul(y, z), x * n + y];
                triples.push(((x, y, z), touched));
            }
        }
    }
    // Greedy order: next the cell that completes the most triples, so the
    // cocycle identity prunes as early as possible.
    let mut cells: Vec<usize> = Vec::new();
    let mut assigned: Vec<bool> = (0..n * n).map(|k| !free(k)).collect();
    let pending = |assigned: &[bool], t: &[usize; 4]| t.iter().filter(|&&k| !assigned[k]).count();
    while cells.len() < (n - 1) * (n - 1) {
        let best = (0..n * n)
            .filter(|&k| !assigned[k])
            .max_by_key(|&k| {
                let done = triples.iter().filter(|(_, t)| t.contains(&k) && pending(&assigned, t) == 1).count();
                (done, std::cmp::Reverse(k))
            })
            .expect("a free cell remains");
        assigned[best] = true;
        cells.push(best);
    }
    let mut rank = vec![None; n * n];
    for (r, &k) in cells.iter().enumerate() {
        rank[k] = Some(r);
    }
    // Each triple is checked once its last free cell is assigned.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); cells.len()];
    for (xyz, touched) in &triples {
        if let Some(last) = touched.iter().filter_map(|&k| rank[k]).max() {
            checks[last].push(*xyz);
        }
    }
    let mut c = vec![0usize; n * n];
    let mut cocycles = Vec::new();
    fn go(
        r: usize,
        cells: &[usize],
        checks: &[Vec<(usize, usize, usize)>],
        t: &Tables,
        c: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if r == cells.len() {
            out.push(c.clone());
            return;
        }
        for v in 0..t.size {
            c[cells[r]] = v;
            if checks[r].iter().all(|&(x, y, z)| cocycle_defect(t, c, x, y, z) == 0) {
                go(r + 1, cells, checks, t, c, out);
            }
        }
        c[cells[r]] = 0;
    }
    go(0, &cells, &checks, &t, &mut c, &mut cocycles);
    let others: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let boundaries: HashSet<Vec<usize>> = all_maps(others.len(), t.size)
        .map(|vals| {
            let mut b = vec![0; n];
            for (&x, v) in others.iter().zip(vals) {
                b[x] = v;
            }
            coboundary1(&t, &b)
        })
        .collect();
    census_from(&cocycles, &boundaries, &t, &divisors(exponent(&raw.moduli)))
}

// ------------------------------------------------------------ instances

pub fn v4() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

pub fn s3() -> FiniteGroup {
    FiniteGroup::symmetric(3).0
}

fn m(rows: &[&[i64]]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Trivial and nontrivial modules with `|Γ| ≤ 6` and `|A| ≤ 8`.
pub fn small_modules() -> Vec<(String, RawModule)> {
    let mut out = Vec::new();
    let mut push = |name: &str, gamma: FiniteGroup, moduli: &[u64], act: Vec<Vec<Vec<i64>>>| {
        out.push((
            name.to_string(),
            RawModule {
                gamma,
                moduli: moduli.to_vec(),
                generator_action: act,
            },
        ))
    };
    let id = |k: usize| -> Vec<Vec<i64>> { (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect() };
    let neg = |k: usize| -> Vec<Vec<i64>> { (0..k).map(|i| (0..k).map(|j| -((i == j) as i64)).collect()).collect() };
    let c = FiniteGroup::cyclic;
    // trivial actions
    for (gname, gamma) in [("Z2", c(2)), ("Z3", c(3)), ("Z4", c(4)), ("V4", v4()), ("Z5", c(5)), ("Z6", c(6)), ("S3", s3())] {
        for moduli in [&[2u64][..], &[3], &[4], &[2, 2], &[6], &[8], &[2, 4], &[2, 2, 2]] {
            let gens = gamma.generators().len();
            let k = moduli.len();
            push(&format!("{gname} on {moduli:?} trivial"), gamma.clone(), moduli, vec![id(k); gens]);
        }
    }
    // inversion through a quotient of order 2
    push("Z2 on Z3 by -1", c(2), &[3], vec![neg(1)]);
    push("Z2 on Z4 by -1", c(2), &[4], vec![neg(1)]);
    push("Z2 on Z8 by -1", c(2), &[8], vec![neg(1)]);
    push("Z2 on Z8 by 3", c(2), &[8], vec![m(&[&[3]])]);
    push("Z2 on Z8 by 5", c(2), &[8], vec![m(&[&[5]])]);
    push("Z2 on Z2^2 by swap", c(2), &[2, 2], vec![m(&[&[0, 1], &[1, 0]])]);
    push("Z2 on Z2^3 by swap", c(2), &[2, 2, 2], vec![m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])]);
    push("Z2 on Z2+Z4 by -1", c(2), &[2, 4], vec![neg(2)]);
    push("Z4 on Z4 by -1", c(4), &[4], vec![neg(1)]);
    push("Z4 on Z5 by 2", c(4), &[5], vec![m(&[&[2]])]);
    push("Z3 on Z2^2 by rotation", c(3), &[2, 2], vec![m(&[&[0, 1], &[1, 1]])]);
    push("Z3 on Z7 by 2", c(3), &[7], vec![m(&[&[2]])]);
    push("Z6 on Z7 by 3", c(6), &[7], vec![m(&[&[3]])]);
    push("Z6 on Z3 by -1", c(6), &[3], vec![neg(1)]);
    push("Z6 on Z4 by -1", c(6), &[4], vec![neg(1)]);
    push("V4 on Z4 by (-1, 1)", v4(), &[4], vec![neg(1), id(1)]);
    push("V4 on Z8 by (-1, 3)", v4(), &[8], vec![neg(1), m(&[&[3]])]);
    push("V4 on Z3 by (-1, -1)", v4(), &[3], vec![neg(1), neg(1)]);
    // S3 generated by a transposition and a 3-cycle
    push("S3 on Z3 by sign", s3(), &[3], vec![neg(1), id(1)]);
    push("S3 on Z4 by sign", s3(), &[4], vec![neg(1), id(1)]);
    push("S3 on Z2^2 as GL2(F2)", s3(), &[2, 2], vec![m(&[&[0, 1], &[1, 0]]), m(&[&[0, 1], &[1, 1]])]);
    push("S3 on Z7 by sign", s3(), &[7], vec![neg(1), id(1)]);
    out
}

// ------------------------------------------------------------ pushout models

/// Permutation group on `degree` points.
pub fn perm_group(degree: usize, gens: &[Perm]) -> (FiniteGroup, Vec<Perm>) {
    FiniteGroup::from_generators(degree, gens, 10_000).expect("closure")
}

fn index_of(elems: &[Perm], p: &[usize]) -> usize {
    elems.iter().position(|e| e == p).expect("element present")
}

/// 2×2 matrices over `F₃` acting on the 9 vectors `3x + y`.
fn f3_perm(a: [[i64; 2]; 2]) -> Perm {
    (0..9)
        .map(|v| {
            let (x, y) = ((v / 3) as i64, (v % 3) as i64);
            let nx = (a[0][0] * x + a[0][1] * y).rem_euclid(3);
            let ny = (a[1][0] * x + a[1][1] * y).rem_euclid(3);
            (3 * nx + ny) as usize
        })
        .collect()
}

fn automorphism(g: &FiniteGroup, images: &[usize]) -> Perm {
    let a = g.extend_hom(g.generators(), images, g).expect("images define a homomorphism");
    assert!(g.is_automorphism(&a));
    a
}

fn perm_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(&q, p);
        k += 1;
    }
    k
}

/// `(G, Z = ι(A), Γ, α)` with `Γ` acting on `G` through generator automorphisms.
pub struct PushoutModel {
    pub name: String,
    pub g: FiniteGroup,
    pub raw: RawModule,
    /// Element of `G` for each ambient coordinate vector of `A`.
    pub iota: Box<dyn Fn(&[i64]) -> usize>,
    pub alpha_generators: Vec<Perm>,
}

pub fn pushout_models() -> Vec<PushoutModel> {
    let mut out = Vec::new();
    let c = FiniteGroup::cyclic;
    let raw = |gamma: FiniteGroup, moduli: &[u64], act: Vec<Vec<Vec<i64>>>| RawModule {
        gamma,
        moduli: moduli.to_vec(),
        generator_action: act,
    };
    let mul_mod = |n: usize, k: usize| -> Perm { (0..n).map(|x| x * k % n).collect() };

    out.push(PushoutModel {
        name: "Z4 over Z2, trivial".into(),
        g: c(4),
        raw: raw(c(2), &[2], vec![m(&[&[1]])]),
        iota: Box::new(|a| 2 * a[0] as usize),
        alpha_generators: vec![mul_mod(4, 1)],
    });
    out.push(PushoutModel {
        name: "Z4 = Z, inversion".into(),
        g: c(4),
        raw: raw(c(2), &[4], vec![m(&[&[-1]])]),
        iota: Box::new(|a| a[0] as usize),
        alpha_generators: vec![mul_mod(4, 3)],
    });
    out.push(PushoutModel {
        name: "Z8 over Z2, times 5".into(),
        g: c(8),
        raw: raw(c(2), &[2], vec![m(&[&[1]])]),
        iota: Box::new(|a| 4 * a[0] as usize),
        alpha_generators: vec![mul_mod(8, 5)],
    });
    out.push(PushoutModel {
        name: "Z6 over Z2, inversion".into(),
        g: c(6),
        raw: raw(c(2), &[2], vec![m(&[&[1]])]),
        iota: Box::new(|a| 3 * a[0] as usize),
        alpha_generators: vec![mul_mod(6, 5)],
    });
    out.push(PushoutModel {
        name: "Z3, trivial center, inversion".into(),
        g: c(3),
        raw: raw(c(2), &[1], vec![m(&[&[1]])]),
        iota: Box::new(|_| 0),
        alpha_generators: vec![mul_mod(3, 2)],
    });
    {
        let g = s3();
        out.push(PushoutModel {
            name: "S3, trivial center, trivial action".into(),
            raw: raw(c(2), &[1], vec![m(&[&[1]])]),
            iota: Box::new(|_| 0),
            alpha_generators: vec![(0..g.order()).collect()],
            g,
        });
    }
    {
        // V4 element (n, h) at index 2h + n.
        let g = v4();
        out.push(PushoutModel {
            name: "V4 = Z, swap".into(),
            g: g.clone(),
            raw: raw(c(2), &[2, 2], vec![m(&[&[0, 1], &[1, 0]])]),
            iota: Box::new(|a| (2 * a[1] + a[0]) as usize),
            alpha_generators: vec![vec![0, 2, 1, 3]],
        });
        out.push(PushoutModel {
            name: "V4, trivial center, rotation by Z3".into(),
            g,
            raw: raw(c(3), &[1], vec![m(&[&[1]])]),
            iota: Box::new(|_| 0),
            alpha_generators: vec![vec![0, 2, 3, 1]],
        });
    }
    {
        let (g, elems) = perm_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
        let r = index_of(&elems, &[1, 2, 3, 0]);
        let s = index_of(&elems, &[0, 3, 2, 1]);
        let r2 = g.mul(r, r);
        let outer = automorphism(&g, &[g.inv(r), g.mul(r, s)]);
        assert_eq!(perm_order(&outer), 2);
        out.push(PushoutModel {
            name: "D4 over its center, outer involution".into(),
            g,
            raw: raw(c(2), &[2], vec![m(&[&[1]])]),
            iota: Box::new(move |a| if a[0] == 0 { 0 } else { r2 }),
            alpha_generators: vec![outer],
        });
    }
    {
        let i = f3_perm([[0, 1], [2, 0]]);
        let j = f3_perm([[1, 1], [1, 2]]);
        let (g, elems) = perm_group(9, &[i.clone(), j.clone()]);
        assert_eq!(g.order(), 8);
        let (ii, jj) = (index_of(&elems, &i), index_of(&elems, &j));
        let minus = g.mul(ii, ii);
        out.push(PushoutModel {
            name: "Q8 over its center, trivial".into(),
            g: g.clone(),
            raw: raw(c(2), &[2], vec![m(&[&[1]])]),
            iota: Box::new(move |a| if a[0] == 0 { 0 } else { minus }),
            alpha_generators: vec![(0..8).collect()],
        });
        let k = g.mul(ii, jj);
        let rot = [k, g.inv(k)]
            .into_iter()
            .map(|x| automorphism(&g, &[jj, x]))
            .find(|a| perm_order(a) == 3)
            .expect("an order-3 automorphism permuting i, j, k");
        out.push(PushoutModel {
            name: "Q8 over its center, Z3 rotation".into(),
            g,
            raw: raw(c(3), &[2], vec![m(&[&[1]])]),
            iota: Box::new(move |a| if a[0] == 0 { 0 } else { minus }),
            alpha_generators: vec![rot],
        });
    }
    {
        let (g, _) = perm_group(9, &[f3_perm([[1, 1], [0, 1]]), f3_perm([[1, 0], [1, 1]])]);
        assert_eq!(g.order(), 24);
        let minus = g.center().into_iter().find(|&z| z != g.identity()).expect("-1");
        out.push(PushoutModel {
            name: "SL(2,3) over its center, trivial".into(),
            g: g.clone(),
            raw: raw(c(2), &[2], vec![m(&[&[1]])]),
            iota: Box::new(move |a| if a[0] == 0 { 0 } else { minus }),
            alpha_generators: vec![(0..24).collect()],
        });
    }
    out
}

/// One pushout input per class of `H²(Γ, A)` for every model.
pub fn pushout_instances() -> Vec<(String, PushoutInput)> {
    let mut out = Vec::new();
    for model in pushout_models() {
        let module = model.raw.module();
        let h = cohomology_group(&module, 2, DEFAULT_COHOMOLOGY_BUDGET).expect("H2");
        let coeff = module.coeff();
        let iota: Vec<usize> = coeff
            .elements()
            .unwrap()
            .iter()
            .map(|a| {
                let amb = coeff.to_ambient(a).unwrap();
                let amb: Vec<i64> = amb.iter().map(|v| i64::try_from(v).unwrap()).collect();
                (model.iota)(&amb)
            })
            .collect();
        let alpha = extend_perm_action(&model.raw.gamma, &model.alpha_generators);
        for class in h.classes().unwrap() {
            let et = build_extension(&module, &class.representative).expect("cocycle");
            let name = format!("{} class {:?}", model.name, class.coordinates);
            out.push((name, PushoutInput::with_gamma_action(model.g.clone(), iota.clone(), et, &alpha)));
        }
    }
    out
}

pub fn abs_det_is_one(m: &IntMatrix) -> bool {
    let rows: Vec<Vec<BigInt>> = m.row_vecs();
    determinant(&rows).abs() == BigInt::from(1)
}
