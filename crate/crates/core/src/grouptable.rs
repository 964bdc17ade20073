//! Finite groups given by an explicit multiplication table.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default cap on the size of a closure computed by [`FiniteGroup::from_generators`].
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A permutation of `{0, …, n-1}` in image notation.
pub type Perm = Vec<usize>;

/// A finite group by multiplication table. Elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

/// Composition `(p·q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl FiniteGroup {
    /// Closure of permutation generators, numbered breadth-first from the
    /// identity (element 0) applying generators in input order.
    ///
    /// Returns the group together with the permutation of each element.
    pub fn from_generators(
        degree: usize,
        generators: &[Perm],
        cap: usize,
    ) -> Result<(FiniteGroup, Vec<Perm>)> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::invalid(format!(
                    "generator {k} is not a permutation of {degree} points"
                )));
            }
        }
        let identity: Perm = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
        // right[x][k] = index of x·g_k
        let mut right: Vec<Vec<usize>> = Vec::new();
        // BFS tree: element = parent · generator
        let mut tree: Vec<Option<(usize, usize)>> = vec![None];
        let mut x = 0;
        while x < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for (k, g) in generators.iter().enumerate() {
                let y = compose(&elements[x], g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::BudgetExceeded {
                                what: "group closure",
                                cap,
                            });
                        }
                        let i = elements.len();
                        index.insert(y.clone(), i);
                        elements.push(y);
                        tree.push(Some((x, k)));
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            x += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
            for j in 1..n {
                let (parent, k) = tree[j].expect("non-identity elements have a parent");
                let ip = table[i * n + parent] as usize;
                table[i * n + j] = right[ip][k] as u32;
            }
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        let group = Self::assemble(n, table, 0, gens);
        Ok((group, elements))
    }

    /// Validates a raw table: square, in range, with identity, inverses and associativity.
    pub fn from_table(rows: &[Vec<usize>], generators: Vec<usize>) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("a group table needs at least one element"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "group table row",
                    expected: n,
                    found: row.len(),
                });
            }
            if !is_permutation(row) {
                return Err(Error::invalid(format!(
                    "row {i} of the group table is not a permutation of the elements"
                )));
            }
            table.extend(row.iter().map(|&v| v as u32));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::invalid("group table has no identity element"))?;
        for j in 0..n {
            let col: Vec<usize> = (0..n).map(|i| table[i * n + j] as usize).collect();
            if !is_permutation(&col) {
                return Err(Error::invalid(format!(
                    "column {j} of the group table is not a permutation of the elements"
                )));
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::IndexOutOfRange { index: g, len: n });
        }
        let group = Self::assemble(n, table, identity, generators);
        group.check_associative()?;
        Ok(group)
    }

    /// Builds a group from a table known to satisfy the axioms.
    pub(crate) fn assemble(n: usize, table: Vec<u32>, identity: usize, generators: Vec<usize>) -> Self {
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x * n + y] as usize == identity)
                .unwrap_or(identity);
        }
        FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
            generators,
        }
    }

    /// Builds a group from a multiplication closure, checking every axiom.
    pub fn from_fn(
        n: usize,
        identity: usize,
        generators: Vec<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteGroup> {
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect();
        let g = Self::from_table(&rows, generators)?;
        if g.identity != identity {
            return Err(Error::invalid("declared identity is not the identity"));
        }
        Ok(g)
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Associativity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n`, with element `k` the `k`-th power of the generator 1.
    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::assemble(n, table, 0, gens)
    }

    /// Symmetric group on `k` points, from a transposition and a `k`-cycle.
    pub fn symmetric(k: usize) -> (FiniteGroup, Vec<Perm>) {
        let mut gens = Vec::new();
        if k >= 2 {
            let mut t: Perm = (0..k).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if k >= 3 {
            gens.push((0..k).map(|i| (i + 1) % k).collect());
        }
        Self::from_generators(k, &gens, usize::MAX).expect("symmetric group closure")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= self.order) {
            return Err(Error::IndexOutOfRange {
                index: g,
                len: self.order,
            });
        }
        self.generators = generators;
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &s in set {
            if s >= self.order {
                return false;
            }
            member[s] = true;
        }
        member[self.identity]
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    /// First `(g, n)` with `g n g⁻¹ ∉ set`, if any.
    pub fn normality_violation(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.order];
        for &s in set {
            member[s] = true;
        }
        for g in 0..self.order {
            for &n in set {
                if !member[self.mul(self.mul(g, n), self.inv(g))] {
                    return Some((g, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        self.is_subgroup(set) && self.normality_violation(set).is_none()
    }

    /// Quotient by a normal subgroup. Cosets are numbered by first appearance,
    /// so the identity coset is 0. Returns the quotient and the projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::invalid("quotient by a subset that is not a subgroup"));
        }
        if let Some((g, n)) = self.normality_violation(normal) {
            return Err(Error::invalid(format!(
                "subgroup is not normal: conjugating {n} by {g} leaves it"
            )));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in std::iter::once(self.identity).chain(0..self.order) {
            if proj[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &n in normal {
                proj[self.mul(x, n)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = proj[self.mul(reps[i], reps[j])] as u32;
            }
        }
        let gens = self.generators.iter().map(|&g| proj[g]).collect();
        Ok((Self::assemble(m, table, 0, gens), proj))
    }

    /// `N ⋊ H` with `(n₁,h₁)(n₂,h₂) = (n₁·φ(h₁)(n₂), h₁h₂)`; element `(n, h)` has
    /// index `h·|N| + n`. `action[h]` is the automorphism `φ(h)` as a permutation of `N`.
    pub fn semidirect_product(
        n: &FiniteGroup,
        h: &FiniteGroup,
        action: &[Perm],
    ) -> Result<FiniteGroup> {
        if action.len() != h.order() {
            return Err(Error::DimensionMismatch {
                context: "semidirect product action",
                expected: h.order(),
                found: action.len(),
            });
        }
        for (k, a) in action.iter().enumerate() {
            if !n.is_automorphism(a) {
                return Err(Error::invalid(format!(
                    "action of element {k} is not an automorphism"
                )));
            }
        }
        if let Some((x, y)) = hom_violation_into_aut(h, n, action) {
            return Err(Error::invalid(format!(
                "action is not a homomorphism at the pair ({x}, {y})"
            )));
        }
        let nn = n.order();
        let size = nn * h.order();
        let mut table = vec![0u32; size * size];
        for a in 0..size {
            let (n1, h1) = (a % nn, a / nn);
            for b in 0..size {
                let (n2, h2) = (b % nn, b / nn);
                let nprod = n.mul(n1, action[h1][n2]);
                table[a * size + b] = (h.mul(h1, h2) * nn + nprod) as u32;
            }
        }
        let identity = h.identity() * nn + n.identity();
        let mut gens: Vec<usize> = n.generators.iter().map(|&g| h.identity() * nn + g).collect();
        gens.extend(h.generators.iter().map(|&g| g * nn + n.identity()));
        Ok(Self::assemble(size, table, identity, gens))
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let trivial: Vec<Perm> = vec![(0..a.order()).collect(); b.order()];
        Self::semidirect_product(a, b, &trivial).expect("trivial action")
    }

    /// A permutation of the elements that is a bijective homomorphism.
    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        p.len() == self.order && is_permutation(p) && hom_check(p, self, self)
    }

    /// Conjugation `x ↦ g x g⁻¹` as a permutation of the elements.
    pub fn conjugation(&self, g: usize) -> Perm {
        let gi = self.inv(g);
        (0..self.order).map(|x| self.mul(self.mul(g, x), gi)).collect()
    }

    /// Breadth-first word tree over `gens`: entry `x` is `(parent, k)` with
    /// `x = parent · gens[k]`; the identity and unreachable elements have `None`.
    pub fn word_tree(&self, gens: &[usize]) -> (Vec<bool>, Vec<Option<(usize, usize)>>) {
        let mut reached = vec![false; self.order];
        let mut tree = vec![None; self.order];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    tree[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        (reached, tree)
    }

    /// Extends generator images to a homomorphism into `target`, or `None` if
    /// the assignment is inconsistent or `gens` does not generate.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        if gens.len() != images.len() {
            return None;
        }
        let (reached, tree) = self.word_tree(gens);
        if reached.iter().any(|r| !r) {
            return None;
        }
        // Visit in BFS order so parents are mapped before children.
        let mut f = vec![usize::MAX; self.order];
        f[self.identity] = target.identity();
        let mut queue = VecDeque::from([self.identity]);
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] && tree[y] == Some((x, k)) {
                    seen[y] = true;
                    f[y] = target.mul(f[x], images[k]);
                    queue.push_back(y);
                }
            }
        }
        // A map compatible with right multiplication by every generator is a homomorphism.
        for x in 0..self.order {
            for (k, &g) in gens.iter().enumerate() {
                if f[self.mul(x, g)] != target.mul(f[x], images[k]) {
                    return None;
                }
            }
        }
        Some(f)
    }

    /// Greedy generating set, preferring elements of large order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for c in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&c).is_err() {
                gens.push(c);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }
}

/// True iff `f(xy) = f(x)f(y)` for all pairs.
pub fn hom_check(f: &[usize], src: &FiniteGroup, dst: &FiniteGroup) -> bool {
    hom_violation(f, src, dst).is_none()
}

/// First pair `(x, y)` with `f(xy) ≠ f(x)f(y)`.
pub fn hom_violation(f: &[usize], src: &FiniteGroup, dst: &FiniteGroup) -> Option<(usize, usize)> {
    if f.len() != src.order() || f.iter().any(|&v| v >= dst.order()) {
        return Some((0, 0));
    }
    for x in 0..src.order() {
        for y in 0..src.order() {
            if f[src.mul(x, y)] != dst.mul(f[x], f[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// First pair violating `φ(xy) = φ(x)∘φ(y)` for a map into automorphisms of `n`.
pub fn hom_violation_into_aut(h: &FiniteGroup, n: &FiniteGroup, action: &[Perm]) -> Option<(usize, usize)> {
    for x in 0..h.order() {
        for y in 0..h.order() {
            if action[h.mul(x, y)] != compose(&action[x], &action[y]) {
                return Some((x, y));
            }
        }
    }
    if action[h.identity()].iter().enumerate().any(|(i, &v)| i != v) {
        return Some((h.identity(), h.identity()));
    }
    let _ = n;
    None
}

/// Brute-force isomorphism search; returns the element map `a → b`.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let (oa, ob) = (a.element_orders(), b.element_orders());
    let mut sa = oa.clone();
    let mut sb = ob.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb || a.is_abelian() != b.is_abelian() {
        return None;
    }
    let gens = a.small_generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.order()).filter(|&y| ob[y] == oa[g]).collect())
        .collect();
    let mut images = vec![0; gens.len()];
    fn search(
        depth: usize,
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let f = a.extend_hom(gens, images, b)?;
            let mut hit = vec![false; b.order()];
            for &y in &f {
                if hit[y] {
                    return None;
                }
                hit[y] = true;
            }
            return Some(f);
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if let Some(f) = search(depth + 1, a, b, gens, candidates, images) {
                return Some(f);
            }
        }
        None
    }
    search(0, a, b, &gens, &candidates, &mut images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let (g, _) = FiniteGroup::from_generators(2, &[vec![1, 0]], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 2);
        let (g, _) =
            FiniteGroup::from_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let (g, _) = FiniteGroup::from_generators(4, &[], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_cap() {
        let (_, _) = FiniteGroup::symmetric(4);
        let gens = vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        assert!(matches!(
            FiniteGroup::from_generators(5, &gens, 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(FiniteGroup::from_generators(3, &[vec![0, 0, 1]], 10).is_err());
    }

    #[test]
    fn table_matches_permutation_product() {
        let (g, perms) = FiniteGroup::symmetric(4);
        assert_eq!(g.order(), 24);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(perms[g.mul(a, b)], compose(&perms[a], &perms[b]));
            }
        }
        assert!(g.check_associative().is_ok());
    }

    #[test]
    fn hom_check_examples() {
        let z4 = FiniteGroup::cyclic(4);
        let id: Vec<usize> = (0..4).collect();
        assert!(hom_check(&id, &z4, &z4));
        assert!(hom_check(&[0, 0, 0, 0], &z4, &z4));
        // Swap 1 and 2, fix 0 and 3.
        assert!(!hom_check(&[0, 2, 1, 3], &z4, &z4));
    }

    #[test]
    fn from_table_rejects_bad_tables() {
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]], vec![]).is_err());
        // Latin square without associativity: the quasigroup x∘y = -x-y mod 3
        // has no identity; use a loop of order 5 that is not a group.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&loop5, vec![]),
            Err(Error::Associativity(..))
        ));
    }

    #[test]
    fn quotient_and_products() {
        let z4 = FiniteGroup::cyclic(4);
        let (q, proj) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], 0);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(find_isomorphism(&v4, &z4).is_none());
        assert!(find_isomorphism(&q, &FiniteGroup::cyclic(2)).is_some());
        let z3 = FiniteGroup::cyclic(3);
        let inversion = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let s3 = FiniteGroup::semidirect_product(&z3, &FiniteGroup::cyclic(2), &inversion).unwrap();
        let (sym3, _) = FiniteGroup::symmetric(3);
        assert!(find_isomorphism(&s3, &sym3).is_some());
    }

    #[test]
    fn lagrange_census() {
        let (g, _) = FiniteGroup::symmetric(4);
        for o in g.element_orders() {
            assert_eq!(g.order() % o, 0);
        }
    }

    #[test]
    fn generator_order_independence() {
        let a = vec![1, 2, 0, 3];
        let b = vec![0, 1, 3, 2];
        let (g1, _) = FiniteGroup::from_generators(4, &[a.clone(), b.clone()], 100).unwrap();
        let (g2, _) = FiniteGroup::from_generators(4, &[b, a], 100).unwrap();
        assert!(find_isomorphism(&g1, &g2).is_some());
    }
}
