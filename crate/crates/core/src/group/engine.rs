use crate::abelian::{snf, FgAbelianGroup, IntMat};
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};
use num::integer::lcm;
use num::BigInt;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// An explicit finite subgroup of `GL(V)` over a cyclotomic field: the full
/// element list, deduplicated by canonical matrix serialization, with the
/// identity at index 0.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order_n: u32,
    dim: usize,
    elements: Vec<CycMatrix>,
    index: HashMap<String, usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Breadth-first closure of the generated group, erroring out past the
    /// cap. Generators must be invertible matrices of one dimension and one
    /// cyclotomic order.
    pub fn closure(generators: &[CycMatrix], cap: usize) -> Result<FiniteGroup> {
        let (order_n, dim) = match generators.first() {
            Some(g) => (g.order(), g.rows()),
            None => (1, 0),
        };
        for g in generators {
            if !g.is_square() || g.rows() != dim {
                return Err(Error::InvalidGroup(
                    "generators must be square matrices of one dimension".into(),
                ));
            }
            if g.order() != order_n {
                return Err(Error::MixedOrders {
                    left: order_n,
                    right: g.order(),
                });
            }
            if g.inv().is_err() {
                return Err(Error::InvalidGroup("generator is singular".into()));
            }
        }
        let identity = CycMatrix::identity(order_n, dim);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity.canonical_string(), 0usize);
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod = elements[i].mul(g)?;
                let key = prod.canonical_string();
                if !index.contains_key(&key) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            limit: cap,
                            needed: elements.len() + 1,
                        });
                    }
                    index.insert(key, elements.len());
                    elements.push(prod);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Self::finish(order_n, dim, elements, index)
    }

    /// Wraps an element list that is already closed under products.
    pub fn from_elements(order_n: u32, dim: usize, elements: Vec<CycMatrix>) -> Result<FiniteGroup> {
        let mut index = HashMap::new();
        let mut ordered = elements;
        // identity first
        let id_pos = ordered
            .iter()
            .position(|m| m.is_identity())
            .ok_or_else(|| Error::InvalidGroup("element list lacks the identity".into()))?;
        ordered.swap(0, id_pos);
        for (i, m) in ordered.iter().enumerate() {
            if index.insert(m.canonical_string(), i).is_some() {
                return Err(Error::InvalidGroup("duplicate elements".into()));
            }
        }
        Self::finish(order_n, dim, ordered, index)
    }

    fn finish(
        order_n: u32,
        dim: usize,
        elements: Vec<CycMatrix>,
        index: HashMap<String, usize>,
    ) -> Result<FiniteGroup> {
        let mut inverses = Vec::with_capacity(elements.len());
        for m in &elements {
            let inv = m.inv()?;
            let idx = index
                .get(&inv.canonical_string())
                .copied()
                .ok_or_else(|| Error::InvalidGroup("element set not closed under inverse".into()))?;
            inverses.push(idx);
        }
        // spot-check closure under products
        for m in &elements {
            let p = m.mul(&elements[1.min(elements.len() - 1)])?;
            if !index.contains_key(&p.canonical_string()) {
                return Err(Error::InvalidGroup("element set not closed under product".into()));
            }
        }
        Ok(FiniteGroup {
            order_n,
            dim,
            elements,
            index,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.order_n
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        self.index.get(&m.canonical_string()).copied()
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a]
            .mul(&self.elements[b])
            .expect("elements share order and dimension");
        self.index[&p.canonical_string()]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate_idx(&self, g: usize, h: usize) -> usize {
        // g h g^{-1}
        self.mul_idx(self.mul_idx(g, h), self.inverses[g])
    }

    /// Smallest subgroup (as an index set) containing the seed.
    pub fn subgroup_closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.clone();
        set.insert(0);
        let mut queue: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = queue.pop() {
            let candidates: Vec<usize> = seed.iter().map(|&s| self.mul_idx(x, s)).collect();
            for c in candidates {
                if set.insert(c) {
                    queue.push(c);
                }
            }
            let xi = self.inverses[x];
            if set.insert(xi) {
                queue.push(xi);
            }
        }
        set
    }

    /// Witness for "contains a pseudoreflection": a non-identity element
    /// whose fixed space is a hyperplane, i.e. `rank(g - 1) = 1`.
    pub fn pseudoreflection_witness(&self) -> Result<Option<usize>> {
        for i in 1..self.elements.len() {
            if self.elements[i].fixed_space_codim()? == 1 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn has_pseudoreflection(&self) -> Result<bool> {
        Ok(self.pseudoreflection_witness()?.is_some())
    }

    /// Commutant `[G, G]` as an index set: the closure of all commutators
    /// over the full double loop (desk scale).
    pub fn commutator_indices(&self) -> BTreeSet<usize> {
        let n = self.order();
        let mut seed = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul_idx(
                    self.mul_idx(a, b),
                    self.mul_idx(self.inverses[a], self.inverses[b]),
                );
                seed.insert(c);
            }
        }
        self.subgroup_closure(&seed)
    }

    /// Commutant as a group in its own right.
    pub fn commutator_subgroup(&self) -> Result<FiniteGroup> {
        let idx = self.commutator_indices();
        self.subgroup_from_indices(&idx)
    }

    pub fn subgroup_from_indices(&self, indices: &BTreeSet<usize>) -> Result<FiniteGroup> {
        let elements: Vec<CycMatrix> = indices.iter().map(|&i| self.elements[i].clone()).collect();
        FiniteGroup::from_elements(self.order_n, self.dim, elements)
    }

    /// Block-diagonal k-fold sum: the same abstract group acting on `V^{⊕k}`.
    pub fn direct_sum_power(&self, k: usize) -> Result<FiniteGroup> {
        if k == 0 {
            return Err(Error::ShapeMismatch("direct sum power needs k >= 1".into()));
        }
        let elements: Vec<CycMatrix> = self
            .elements
            .iter()
            .map(|m| m.block_diagonal_power(k))
            .collect();
        FiniteGroup::from_elements(self.order_n, self.dim * k, elements)
    }

    /// Abelianization `Q = G/[G,G]` with its full character list, values
    /// lifted to `Q(ζ_lcm(N, exp Q))`.
    pub fn abelianization(&self, ceiling: u32) -> Result<Abelianization> {
        let commutant = self.commutator_indices();
        let n = self.order();

        // cosets, keyed by their smallest element index
        let mut coset_key = vec![usize::MAX; n];
        for e in 0..n {
            let mut key = usize::MAX;
            for &s in &commutant {
                key = key.min(self.mul_idx(e, s));
            }
            coset_key[e] = key;
        }
        let mut keys: Vec<usize> = coset_key.clone();
        keys.sort_unstable();
        keys.dedup();
        let coset_id: HashMap<usize, usize> =
            keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let coset_of: Vec<usize> = coset_key.iter().map(|k| coset_id[k]).collect();
        let q = keys.len();
        debug_assert_eq!(q * commutant.len(), n, "Lagrange");

        let coset_mul = |a: usize, b: usize| -> usize {
            coset_of[self.mul_idx(keys[a], keys[b])]
        };

        // greedy small generating set of the quotient
        let mut gens: Vec<usize> = Vec::new();
        let mut generated: BTreeSet<usize> = BTreeSet::new();
        generated.insert(coset_of[0]);
        for c in 0..q {
            if generated.contains(&c) {
                continue;
            }
            gens.push(c);
            // regenerate
            let mut frontier: Vec<usize> = generated.iter().copied().collect();
            generated.insert(c);
            frontier.push(c);
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = coset_mul(x, g);
                    if generated.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        let m = gens.len();

        // exponent-vector representatives by BFS over the generators
        let mut rep: Vec<Option<Vec<i64>>> = vec![None; q];
        rep[coset_of[0]] = Some(vec![0; m]);
        let mut queue = VecDeque::new();
        queue.push_back(coset_of[0]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = coset_mul(x, g);
                if rep[y].is_none() {
                    let mut r = rep[x].clone().unwrap();
                    r[gi] += 1;
                    rep[y] = Some(r);
                    queue.push_back(y);
                }
            }
        }
        let rep: Vec<Vec<i64>> = rep.into_iter().map(|r| r.expect("generators generate")).collect();

        // relation lattice: for every coset x and generator i,
        // rep(x) + e_i - rep(x * g_i)
        let mut rel_rows: Vec<Vec<BigInt>> = Vec::with_capacity(q * m);
        for x in 0..q {
            for (gi, &g) in gens.iter().enumerate() {
                let y = coset_mul(x, g);
                let mut row: Vec<BigInt> = (0..m)
                    .map(|j| BigInt::from(rep[x][j] - rep[y][j]))
                    .collect();
                row[gi] += 1;
                rel_rows.push(row);
            }
        }
        let rel = IntMat::from_rows(m, rel_rows)?;
        let s = snf(&rel);
        let mut factors: Vec<BigInt> = vec![BigInt::from(0); m];
        for (j, d) in s.d.iter().enumerate() {
            factors[j] = d.clone();
        }
        assert!(
            factors.iter().all(|f| !num::Zero::is_zero(f)),
            "quotient of a finite group is finite"
        );
        let group = FgAbelianGroup::from_invariant_factors(factors.clone());

        // coordinates of each coset in the invariant-factor form: z = rep * v
        let torsion_positions: Vec<usize> = (0..m)
            .filter(|&j| factors[j] > BigInt::from(1))
            .collect();
        let dvals: Vec<i64> = torsion_positions
            .iter()
            .map(|&j| i64::try_from(&factors[j]).expect("desk-scale invariant factor"))
            .collect();
        let mut coset_coords: Vec<Vec<i64>> = Vec::with_capacity(q);
        for x in 0..q {
            let mut z = vec![0i64; m];
            for (i, &ri) in rep[x].iter().enumerate() {
                for j in 0..m {
                    z[j] += ri * i64::try_from(s.v.at(i, j)).expect("small transform entries");
                }
            }
            let coords: Vec<i64> = torsion_positions
                .iter()
                .enumerate()
                .map(|(t, &j)| z[j].rem_euclid(dvals[t]))
                .collect();
            coset_coords.push(coords);
        }

        let exponent = dvals.iter().copied().max().unwrap_or(1) as u32;
        let value_order = lcm(self.order_n, exponent);
        if value_order > ceiling {
            return Err(Error::CyclotomicCeiling {
                needed: value_order,
                ceiling,
            });
        }

        // all characters: tuples over the invariant factors, trivial first
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for &d in &dvals {
            let mut next = Vec::with_capacity(tuples.len() * d as usize);
            for t in &tuples {
                for v in 0..d {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        let mut characters = Vec::with_capacity(tuples.len());
        for t in tuples {
            let mut values = Vec::with_capacity(n);
            for e in 0..n {
                let coords = &coset_coords[coset_of[e]];
                let mut expo: i64 = 0;
                for (j, &c) in t.iter().enumerate() {
                    expo += c * coords[j] * (value_order as i64 / dvals[j]);
                }
                values.push(Cyclotomic::root_of_unity(value_order, expo));
            }
            characters.push(Character {
                cl_coords: t.iter().map(|&x| BigInt::from(x)).collect(),
                values,
            });
        }

        Ok(Abelianization {
            group,
            characters,
            value_order,
            coset_of,
        })
    }
}

/// The abelianization of a finite matrix group with its character data.
#[derive(Debug, Clone)]
pub struct Abelianization {
    /// `Q = G/[G,G]` in invariant-factor form.
    pub group: FgAbelianGroup,
    /// Every homomorphism `Q -> roots of unity`, lifted to the group;
    /// the trivial character comes first and the tuple order is
    /// lexicographic in the invariant-factor coordinates.
    pub characters: Vec<Character>,
    /// Common cyclotomic order of the character values.
    pub value_order: u32,
    /// Element index -> coset id.
    pub coset_of: Vec<usize>,
}

impl Abelianization {
    pub fn character_count(&self) -> usize {
        self.characters.len()
    }

    /// Index of the character with the given class-group coordinates.
    pub fn character_index(&self, coords: &[BigInt]) -> Option<usize> {
        self.characters.iter().position(|c| c.cl_coords == coords)
    }
}

/// One character of the abelianization, tabulated on all group elements.
#[derive(Debug, Clone)]
pub struct Character {
    pub cl_coords: Vec<BigInt>,
    pub values: Vec<Cyclotomic>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.cl_coords.iter().all(|c| num::Zero::is_zero(c))
    }
}
