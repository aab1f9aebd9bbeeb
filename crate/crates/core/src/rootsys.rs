//! Root systems, Weyl groups and parabolic types of split adjoint groups.
//!
//! Characters are integer vectors in the basis of simple roots (the character
//! lattice of an adjoint torus is the root lattice). Reducible systems are
//! orthogonal products of their irreducible components and every operation
//! here factors through the components.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on Weyl group enumeration, `|W(E6)|`.
pub const DEFAULT_WEYL_CAP: usize = 51_840;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Classical number of roots.
    pub fn root_count(self, n: usize) -> usize {
        match self {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Gram matrix of the simple roots (Bourbaki numbering), scaled to be
    /// integral.
    fn gram(self, n: usize) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self {
            Family::A | Family::D | Family::E => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
                match self {
                    Family::A => {
                        for i in 0..n - 1 {
                            link(&mut g, i, i + 1, -1);
                        }
                    }
                    Family::D => {
                        for i in 0..n - 2 {
                            link(&mut g, i, i + 1, -1);
                        }
                        link(&mut g, n - 3, n - 1, -1);
                    }
                    _ => {
                        // 1-3-4-5-...-n with 2 attached to 4
                        link(&mut g, 0, 2, -1);
                        link(&mut g, 1, 3, -1);
                        for i in 2..n - 1 {
                            link(&mut g, i, i + 1, -1);
                        }
                    }
                }
            }
            Family::B => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i + 1 == n { 2 } else { 4 };
                }
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1, -2);
                }
            }
            Family::C => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i + 1 == n { 4 } else { 2 };
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 2, n - 1, -2);
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    /// Index of the first simple root of this component.
    pub offset: usize,
}

impl Component {
    pub fn range(&self) -> core::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }
}

/// A (possibly reducible) reduced crystallographic root system.
///
/// Roots are stored positive first, ordered by height and then by descending
/// coefficient vector, so the simple root `α_i` has index `i`. The negative of
/// root `k` has index `k + N` where `N` is the number of positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<Component>,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn build(spec: &[(Family, usize)]) -> Result<RootSystem> {
        if spec.is_empty() {
            return Err(Error::BadSystemSpec(String::new()));
        }
        let mut components = Vec::new();
        let mut offset = 0;
        for &(family, rank) in spec {
            if !family.valid_rank(rank) {
                return Err(Error::InvalidComponent { family: family.letter(), rank });
            }
            components.push(Component { family, rank, offset });
            offset += rank;
        }
        let n = offset;
        if n > 64 {
            return Err(Error::RankTooLarge(n));
        }
        let mut gram = vec![vec![0i64; n]; n];
        for c in &components {
            let g = c.family.gram(c.rank);
            for i in 0..c.rank {
                for j in 0..c.rank {
                    gram[c.offset + i][c.offset + j] = g[i][j];
                }
            }
        }
        let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();

        // orbit of the simple roots under the simple reflections
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = reflect_with(&cartan, i, &r);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let negative: Vec<Vec<i64>> = positive.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        let roots: Vec<Vec<i64>> = positive.into_iter().chain(negative).collect();
        let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        Ok(RootSystem { components, gram, cartan, roots, index })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `cartan()[i][j] = <α_j, α_i^∨>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.num_positive()
    }

    pub fn negate(&self, k: usize) -> usize {
        let n = self.num_positive();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> {
        0..self.num_positive()
    }

    pub fn negative_roots(&self) -> impl Iterator<Item = usize> {
        self.num_positive()..self.num_roots()
    }

    /// Symmetric form on the root lattice.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (ai, row) in a.iter().zip(&self.gram) {
            if *ai == 0 {
                continue;
            }
            s += ai * row.iter().zip(b).map(|(g, bj)| g * bj).sum::<i64>();
        }
        s
    }

    /// Simple reflection `s_i` applied to a lattice vector.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        reflect_with(&self.cartan, i, v)
    }

    /// Index of the component containing simple root `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.range().contains(&i)).expect("simple root index in range")
    }

    /// Support of a lattice vector as a bit set over the simple roots.
    pub fn support(v: &[i64]) -> ParabolicType {
        ParabolicType::from_indices(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
    }

    pub fn spec_string(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                s.push('x');
            }
            s.push(c.family.letter());
            s.push_str(&alloc::format!("{}", c.rank));
        }
        s
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots().filter(|&k| !self.is_positive_vec(&w.apply(self.root(k)))).count()
    }

    fn is_positive_vec(&self, v: &[i64]) -> bool {
        v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
    }

    /// The permutation of root indices induced by `w`.
    pub fn root_permutation(&self, w: &WeylElement) -> Vec<usize> {
        self.roots.iter().map(|r| self.root_index(&w.apply(r)).expect("Weyl elements permute the roots")).collect()
    }

    /// Longest element, found by right-multiplying with simple reflections
    /// while some simple root is still sent to a positive root.
    pub fn longest_element(&self) -> WeylElement {
        let n = self.rank();
        let mut w = WeylElement::identity(n);
        while let Some(i) = (0..n).find(|&i| self.is_positive_vec(w.image_of_simple(i))) {
            w = w.mul_simple(self, i);
        }
        w
    }

    /// Minimal-length representative of the coset `w·W_τ`.
    pub fn min_coset_rep(&self, w: &WeylElement, tau: ParabolicType) -> WeylElement {
        let mut w = w.clone();
        while let Some(i) = tau.iter().find(|&i| !self.is_positive_vec(w.image_of_simple(i))) {
            w = w.mul_simple(self, i);
        }
        w
    }

    /// Full Weyl group by breadth-first closure under right multiplication by
    /// simple reflections.
    pub fn weyl_group(&self, cap: usize) -> Result<WeylGroup> {
        let n = self.rank();
        let id = WeylElement::identity(n);
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(id.mat.clone());
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            for i in 0..n {
                let next = elements[head].mul_simple(self, i);
                if seen.insert(next.mat.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::WeylCapExceeded { cap });
                    }
                    elements.push(next);
                }
            }
            head += 1;
        }
        // BFS order means words are reduced and the last element is longest
        let longest = elements.len() - 1;
        Ok(WeylGroup { elements, longest })
    }

    /// `τ^opp = -w₀(τ)`.
    pub fn opposite_type(&self, tau: ParabolicType) -> ParabolicType {
        let w0 = self.longest_element();
        ParabolicType::from_indices(tau.iter().map(|i| {
            let img: Vec<i64> = w0.image_of_simple(i).iter().map(|c| -c).collect();
            img.iter().position(|&c| c == 1).expect("-w0 permutes the simple roots")
        }))
    }

    /// Roots of the Levi factor and the unipotent radical of the standard
    /// parabolic of type `tau`.
    pub fn levi_and_radical_roots(&self, tau: ParabolicType) -> LeviDecomposition {
        let mut d = LeviDecomposition::default();
        for k in 0..self.num_roots() {
            let in_levi = RootSystem::support(self.root(k)).is_subset(tau);
            match (in_levi, self.is_positive(k)) {
                (true, true) => {
                    d.levi.push(k);
                    d.levi_positive.push(k);
                }
                (true, false) => {
                    d.levi.push(k);
                    d.levi_negative.push(k);
                }
                (false, true) => d.radical.push(k),
                (false, false) => {}
            }
        }
        d
    }

    pub fn type_poset(&self) -> TypePoset {
        TypePoset::boolean(self.rank())
    }

    /// True when no irreducible component lies entirely inside `tau`.
    pub fn is_nondegenerate(&self, tau: ParabolicType) -> bool {
        self.components.iter().all(|c| !c.range().all(|i| tau.contains(i)))
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses strings such as `"A2"` or `"b2xa1"`.
    fn from_str(s: &str) -> Result<RootSystem> {
        let bad = || Error::BadSystemSpec(String::from(s));
        let mut spec = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            spec.push((family, rank));
        }
        RootSystem::build(&spec)
    }
}

fn reflect_with(cartan: &[Vec<i64>], i: usize, v: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[i].iter().zip(v).map(|(a, b)| a * b).sum();
    let mut out = v.to_vec();
    out[i] -= pairing;
    out
}

/// A subset of the simple roots, naming a conjugacy class of parabolics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct ParabolicType(pub u64);

impl ParabolicType {
    pub const EMPTY: ParabolicType = ParabolicType(0);

    pub fn full(rank: usize) -> ParabolicType {
        if rank == 64 {
            ParabolicType(u64::MAX)
        } else {
            ParabolicType((1u64 << rank) - 1)
        }
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> ParabolicType {
        ParabolicType(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ParabolicType) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, rank: usize) -> ParabolicType {
        ParabolicType(!self.0 & ParabolicType::full(rank).0)
    }

    pub fn insert(self, i: usize) -> ParabolicType {
        ParabolicType(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> ParabolicType {
        ParabolicType(self.0 & !(1 << i))
    }

    /// `'1'` at position `i` iff `α_{i+1}` is in the type.
    pub fn bitstring(self, rank: usize) -> String {
        (0..rank).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<ParabolicType> {
        let mut t = ParabolicType::EMPTY;
        for (i, c) in s.trim().chars().enumerate() {
            match c {
                '1' => t = t.insert(i),
                '0' => {}
                _ => return Err(Error::Parse(alloc::format!("bad type bitstring {s:?}"))),
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeviDecomposition {
    /// `Φ(L)`: roots supported in the type.
    pub levi: Vec<usize>,
    /// `Φ(R_u(P)) = Φ⁺ ∖ Φ(L)`.
    pub radical: Vec<usize>,
    pub levi_positive: Vec<usize>,
    pub levi_negative: Vec<usize>,
}

/// Element of the Weyl group, kept as a word in the simple reflections and as
/// the integer matrix of its action on the root lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylElement {
    word: Vec<usize>,
    /// column-major: column `j` is the image of `α_j`
    mat: Vec<i64>,
    rank: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        let mut mat = vec![0; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement { word: Vec::new(), mat, rank }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElement> {
        let rank = rs.rank();
        let mut w = WeylElement::identity(rank);
        for &i in word {
            if i >= rank {
                return Err(Error::BadReflection { index: i, rank });
            }
            w = w.mul_simple(rs, i);
        }
        Ok(w)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn image_of_simple(&self, j: usize) -> &[i64] {
        &self.mat[j * self.rank..(j + 1) * self.rank]
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let mut out = vec![0; n];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.image_of_simple(j)) {
                *o += c * m;
            }
        }
        out
    }

    /// `self · s_i`. The stored word stays reduced: it is extended when the
    /// length grows and rebuilt by descent when it drops.
    pub fn mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let mut w = self.times_simple(rs, i);
        if self.image_of_simple(i).iter().all(|&c| c <= 0) {
            w.word = w.descent_word(rs);
        } else {
            w.word = self.word.clone();
            w.word.push(i);
        }
        w
    }

    /// Matrix of `self · s_i`, with an empty word.
    fn times_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let n = self.rank;
        let mut mat = Vec::with_capacity(n * n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            mat.extend(self.apply(&rs.reflect(i, &e)));
        }
        WeylElement { word: Vec::new(), mat, rank: n }
    }

    /// Reduced word read off by stripping the smallest right descent until
    /// the identity is reached.
    fn descent_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| w.image_of_simple(i).iter().all(|&c| c <= 0)) {
            w = w.times_simple(rs, i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// `self · other`.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        other.word.iter().fold(self.clone(), |w, &i| w.mul_simple(rs, i))
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &word).expect("word indices already validated")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    /// Index of `w₀` in `elements`.
    pub longest: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }
}

/// The Boolean lattice of types under inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePoset {
    pub rank: usize,
    /// All subsets, ordered by size and then by bit pattern.
    pub types: Vec<ParabolicType>,
}

impl TypePoset {
    pub fn boolean(rank: usize) -> TypePoset {
        assert!(rank < 32, "type poset enumeration needs rank < 32");
        let mut types: Vec<ParabolicType> = (0..1u64 << rank).map(ParabolicType).collect();
        types.sort_by_key(|t| (t.len(), t.0));
        TypePoset { rank, types }
    }

    pub fn leq(&self, a: ParabolicType, b: ParabolicType) -> bool {
        a.is_subset(b)
    }

    /// Covering pairs `(a, b)` with `a ⊂ b` and `|b| = |a| + 1`.
    pub fn covers(&self) -> Vec<(ParabolicType, ParabolicType)> {
        let mut out = Vec::new();
        for &a in &self.types {
            for i in 0..self.rank {
                if !a.contains(i) {
                    out.push((a, a.insert(i)));
                }
            }
        }
        out
    }

    pub fn minimal(&self) -> ParabolicType {
        ParabolicType::EMPTY
    }

    pub fn maximal(&self) -> ParabolicType {
        ParabolicType::full(self.rank)
    }
}
