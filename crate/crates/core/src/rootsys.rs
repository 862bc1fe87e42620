//! Finite crystallographic root systems in the simple-root basis, and the
//! lattice automorphisms that preserve them.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::subset::{IndexSubset, MAX_RANK};

/// Default cap on the Weyl group order for exhaustive scans.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// Closure of the simple roots is abandoned beyond this many roots; a Cartan
/// matrix that gets here is not of finite type.
const MAX_ROOTS: usize = 50_000;

/// A root in simple-root coordinates.
pub type Root = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    fn letter(self) -> char {
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
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::Spec(format!("unknown family {s:?}"))),
        }
    }
}

/// An irreducible Cartan type such as `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C | Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::Spec(format!(
                "rank {rank} is not valid for family {}",
                family.letter()
            )));
        }
        Ok(CartanType { family, rank })
    }

    /// Cartan matrix with entries `a[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki labelling.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    bond(i, i + 1, -1, -1);
                }
                // alpha_n short
                bond(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                for i in 0..n - 2 {
                    bond(i, i + 1, -1, -1);
                }
                // alpha_n long
                bond(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                for i in 0..n.saturating_sub(3) {
                    bond(i, i + 1, -1, -1);
                }
                if n >= 3 {
                    bond(n - 3, n - 2, -1, -1);
                    bond(n - 3, n - 1, -1, -1);
                }
            }
            Family::E => {
                bond(0, 2, -1, -1);
                bond(1, 3, -1, -1);
                for i in 2..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
            }
            Family::F => {
                bond(0, 1, -1, -1);
                bond(1, 2, -2, -1);
                bond(2, 3, -1, -1);
            }
            Family::G => {
                // alpha_1 short, alpha_2 long
                bond(0, 1, -1, -3);
            }
        }
        a
    }

    /// Classical number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
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

    /// Classical order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.char_indices().nth(1).map_or(s.len(), |(i, _)| i);
        let family: Family = s[..split]
            .parse()
            .map_err(|_| Error::Spec(format!("unknown family in {s:?}")))?;
        let rank: usize = s[split..]
            .parse()
            .map_err(|_| Error::Spec(format!("bad rank in {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// A list of irreducible factors, e.g. `A2xA2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    pub entries: Vec<CartanType>,
}

impl FromStr for CartanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(['x', 'X', '×', '*'])
            .map(str::parse)
            .collect::<Result<Vec<CartanType>>>()?;
        if entries.is_empty() {
            return Err(Error::Spec("empty type".into()));
        }
        Ok(CartanSpec { entries })
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Identity of a root system, derived from its Cartan matrix. Elements and
/// automorphisms carry it so that mixing systems is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemId(u64);

/// A finite root system.
///
/// Roots are indexed `0..2N`: indices `0..N` are the positive roots sorted by
/// height (simple root `i` has index `i`), and index `N + k` is `-root(k)`.
#[derive(Clone)]
pub struct RootSystem {
    id: SystemId,
    label: String,
    cartan: Vec<Vec<i32>>,
    factors: Vec<CartanType>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    positive: usize,
    reflections: Vec<Vec<u16>>,
    guard: u64,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("label", &self.label)
            .field("rank", &self.rank())
            .field("roots", &self.roots.len())
            .finish()
    }
}

/// Builds the root system of a (possibly reducible) Cartan type.
pub fn build_root_system(spec: &CartanSpec) -> Result<RootSystem> {
    let mut parts = spec.entries.iter();
    let first = parts
        .next()
        .ok_or_else(|| Error::Spec("empty type".into()))?;
    let mut rs = RootSystem::irreducible(*first)?;
    for t in parts {
        rs = product(&rs, &RootSystem::irreducible(*t)?);
    }
    Ok(rs)
}

/// Direct product: block-diagonal Cartan matrix, indices of `b` shifted by rank of `a`.
pub fn product(a: &RootSystem, b: &RootSystem) -> RootSystem {
    let (n, m) = (a.rank(), b.rank());
    let mut cartan = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        cartan[i][..n].copy_from_slice(&a.cartan[i]);
    }
    for i in 0..m {
        cartan[n + i][n..].copy_from_slice(&b.cartan[i]);
    }
    let mut factors = a.factors.clone();
    factors.extend_from_slice(&b.factors);
    let label = format!("{}x{}", a.label, b.label);
    RootSystem::from_cartan_unchecked(label, cartan, factors, a.guard.max(b.guard))
        .expect("product of finite root systems is finite")
}

impl RootSystem {
    fn irreducible(t: CartanType) -> Result<Self> {
        let rs = Self::from_cartan_unchecked(t.to_string(), t.cartan_matrix(), vec![t], DEFAULT_GUARD)?;
        if rs.roots.len() != t.root_count() {
            return Err(Error::Spec(format!(
                "{t}: generated {} roots, expected {}",
                rs.roots.len(),
                t.root_count()
            )));
        }
        Ok(rs)
    }

    /// Builds a root system from an explicit Cartan matrix, validating that it
    /// is a generalized Cartan matrix of finite type.
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::Spec(format!("rank {n} out of range")));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Spec("Cartan matrix must be square".into()));
            }
            if row[i] != 2 {
                return Err(Error::Spec(format!("diagonal entry {i} is {}, not 2", row[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (aij, aji) = (cartan[i][j], cartan[j][i]);
                if aij > 0 || (aij == 0) != (aji == 0) || aij * aji > 3 {
                    return Err(Error::Spec(format!(
                        "entries ({},{}) = {aij}, {aji} are not a finite-type bond",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Self::from_cartan_unchecked("custom".into(), cartan, Vec::new(), DEFAULT_GUARD)
    }

    fn from_cartan_unchecked(
        label: String,
        cartan: Vec<Vec<i32>>,
        factors: Vec<CartanType>,
        guard: u64,
    ) -> Result<Self> {
        let n = cartan.len();
        let pairing = |root: &[i32], j: usize| -> i32 {
            (0..n).map(|i| root[i] * cartan[i][j]).sum()
        };

        // close the simple roots under simple reflections
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for j in 0..n {
                let c = pairing(&r, j);
                if c == 0 {
                    continue;
                }
                let mut s = r.clone();
                s[j] -= c;
                if !seen.contains_key(&s) {
                    if seen.len() >= MAX_ROOTS {
                        return Err(Error::Spec("reflection closure does not terminate; not of finite type".into()));
                    }
                    seen.insert(s.clone(), ());
                    queue.push_back(s);
                }
            }
        }

        let mut positives = Vec::new();
        for r in seen.keys() {
            let pos = r.iter().all(|&c| c >= 0);
            let neg = r.iter().all(|&c| c <= 0);
            if !pos && !neg {
                return Err(Error::Spec(format!("root {r:?} has mixed signs")));
            }
            if pos {
                positives.push(r.clone());
            }
        }
        if positives.len() * 2 != seen.len() {
            return Err(Error::Spec("root set is not symmetric under negation".into()));
        }
        positives.sort_by(|a, b| {
            let (ha, hb): (i32, i32) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let np = positives.len();
        if np + np > u16::MAX as usize {
            return Err(Error::Spec("too many roots".into()));
        }
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| r.iter().map(|c| -c).collect::<Root>()));
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();

        let reflections = (0..n)
            .map(|j| {
                roots
                    .iter()
                    .map(|r| {
                        let c = pairing(r, j);
                        let mut s = r.clone();
                        s[j] -= c;
                        index[&s] as u16
                    })
                    .collect()
            })
            .collect();

        let mut h = DefaultHasher::new();
        cartan.hash(&mut h);
        Ok(RootSystem {
            id: SystemId(h.finish()),
            label,
            cartan,
            factors,
            roots,
            index,
            positive: np,
            reflections,
            guard,
        })
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn factors(&self) -> &[CartanType] {
        &self.factors
    }

    pub fn all_indices(&self) -> IndexSubset {
        IndexSubset::full(self.rank())
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.positive]
    }

    pub fn num_positive(&self) -> usize {
        self.positive
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn root_index(&self, r: &[i32]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive
    }

    /// Index of the negated root.
    pub fn negate(&self, k: usize) -> usize {
        if k < self.positive {
            k + self.positive
        } else {
            k - self.positive
        }
    }

    /// Index of `s_j(root k)`.
    pub fn reflect(&self, j: usize, k: usize) -> usize {
        self.reflections[j][k] as usize
    }

    /// `<root, alpha_j^vee>`
    pub fn coroot_pairing(&self, root: &[i32], j: usize) -> i32 {
        (0..self.rank()).map(|i| root[i] * self.cartan[i][j]).sum()
    }

    /// Simple indices occurring in a root with nonzero coefficient.
    pub fn root_support(&self, k: usize) -> IndexSubset {
        IndexSubset::from_indices(
            self.roots[k].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i),
        )
    }

    /// Classical Weyl group order when the type is known.
    pub fn weyl_order(&self) -> Option<u128> {
        if self.factors.is_empty() {
            None
        } else {
            Some(self.factors.iter().map(|t| t.weyl_order()).product())
        }
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    pub fn with_guard(mut self, guard: u64) -> Self {
        self.guard = guard;
        self
    }

    /// If this system is `F x F` with identical factor blocks, the rank of `F`.
    pub fn self_product_half(&self) -> Option<usize> {
        let n = self.rank();
        if !n.is_multiple_of(2) {
            return None;
        }
        let h = n / 2;
        for i in 0..h {
            for j in 0..h {
                if self.cartan[i][j] != self.cartan[i + h][j + h]
                    || self.cartan[i][j + h] != 0
                    || self.cartan[i + h][j] != 0
                {
                    return None;
                }
            }
        }
        Some(h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutKind {
    /// Permutes the simple roots.
    Diagram,
    General,
}

/// A linear automorphism of the root lattice that maps roots to roots.
///
/// `matrix[r][c]` is the `r`-th coordinate of the image of `alpha_c`, so the
/// columns are the images of the simple roots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootAutomorphism {
    system: SystemId,
    matrix: Vec<Vec<i32>>,
    perm: Vec<u16>,
    inv: Vec<u16>,
    kind: AutKind,
    order: u32,
}

impl fmt::Debug for RootAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootAutomorphism")
            .field("matrix", &self.matrix)
            .field("kind", &self.kind)
            .field("order", &self.order)
            .finish()
    }
}

/// Checks that `matrix` maps the root set of `rs` onto itself and classifies it.
pub fn validate_automorphism(
    rs: &RootSystem,
    matrix: Vec<Vec<i32>>,
    expected_order: Option<u32>,
) -> Result<RootAutomorphism> {
    let n = rs.rank();
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Automorphism(format!("matrix must be {n}x{n}")));
    }
    let total = rs.roots.len();
    let mut perm = Vec::with_capacity(total);
    let mut inv = vec![u16::MAX; total];
    for (k, r) in rs.roots.iter().enumerate() {
        let img: Root = (0..n).map(|row| (0..n).map(|c| matrix[row][c] * r[c]).sum()).collect();
        let t = rs
            .root_index(&img)
            .ok_or_else(|| Error::Automorphism(format!("image {img:?} of root {r:?} is not a root")))?;
        if inv[t] != u16::MAX {
            return Err(Error::Automorphism("map is not injective on roots".into()));
        }
        inv[t] = k as u16;
        perm.push(t as u16);
    }
    let diagram = (0..n).all(|c| {
        let col: Vec<i32> = (0..n).map(|r| matrix[r][c]).collect();
        col.iter().filter(|&&x| x == 1).count() == 1 && col.iter().all(|&x| x == 0 || x == 1)
    });

    let order = {
        let mut cur = perm.clone();
        let mut k = 1u32;
        while cur.iter().enumerate().any(|(i, &x)| x as usize != i) {
            cur = cur.iter().map(|&x| perm[x as usize]).collect();
            k += 1;
            if k as usize > 4 * total + 4 {
                return Err(Error::Internal("automorphism order did not resolve".into()));
            }
        }
        k
    };
    if let Some(e) = expected_order {
        if e != order {
            return Err(Error::Order { expected: e, actual: order });
        }
    }
    Ok(RootAutomorphism {
        system: rs.id,
        matrix,
        perm,
        inv,
        kind: if diagram { AutKind::Diagram } else { AutKind::General },
        order,
    })
}

pub fn aut_inverse(rs: &RootSystem, theta: &RootAutomorphism) -> Result<RootAutomorphism> {
    theta.check_system(rs)?;
    let n = rs.rank();
    let mut m = vec![vec![0; n]; n];
    for c in 0..n {
        let img = &rs.roots[theta.inv[c] as usize];
        for r in 0..n {
            m[r][c] = img[r];
        }
    }
    validate_automorphism(rs, m, None)
}

/// `first` after `second`.
pub fn aut_compose(
    rs: &RootSystem,
    first: &RootAutomorphism,
    second: &RootAutomorphism,
) -> Result<RootAutomorphism> {
    first.check_system(rs)?;
    second.check_system(rs)?;
    let n = rs.rank();
    let m = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| first.matrix[r][k] * second.matrix[k][c]).sum())
                .collect()
        })
        .collect();
    validate_automorphism(rs, m, None)
}

pub fn aut_power(rs: &RootSystem, theta: &RootAutomorphism, exp: i64) -> Result<RootAutomorphism> {
    let base = if exp < 0 { aut_inverse(rs, theta)? } else { theta.clone() };
    let k = exp.unsigned_abs() % theta.order as u64;
    let mut acc = RootAutomorphism::identity(rs);
    for _ in 0..k {
        acc = aut_compose(rs, &acc, &base)?;
    }
    Ok(acc)
}

impl RootAutomorphism {
    pub fn identity(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let m = (0..n).map(|r| (0..n).map(|c| (r == c) as i32).collect()).collect();
        validate_automorphism(rs, m, None).expect("identity preserves roots")
    }

    pub fn negation(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let m = (0..n).map(|r| (0..n).map(|c| -((r == c) as i32)).collect()).collect();
        validate_automorphism(rs, m, None).expect("-1 preserves roots")
    }

    /// Diagram map sending `alpha_i` to `alpha_{perm[i]}` (0-based).
    pub fn from_simple_permutation(rs: &RootSystem, perm: &[usize]) -> Result<Self> {
        let n = rs.rank();
        if perm.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::Automorphism("permutation has wrong size".into()));
        }
        let mut m = vec![vec![0; n]; n];
        for (c, &p) in perm.iter().enumerate() {
            m[p][c] = 1;
        }
        validate_automorphism(rs, m, None)
    }

    /// Swap of the two factors of a self-product `F x F`.
    pub fn product_swap(rs: &RootSystem) -> Result<Self> {
        let h = rs
            .self_product_half()
            .ok_or_else(|| Error::Automorphism(format!("{} is not a self-product", rs.label)))?;
        let perm: Vec<usize> = (0..2 * h).map(|i| (i + h) % (2 * h)).collect();
        Self::from_simple_permutation(rs, &perm)
    }

    /// Nontrivial diagram involution of each irreducible factor that has one
    /// (A_n for n >= 2, D_n swapping the two short legs, E6).
    pub fn diagram_flip(rs: &RootSystem) -> Result<Self> {
        if rs.factors.is_empty() {
            return Err(Error::Automorphism("flip needs a named Cartan type".into()));
        }
        let mut perm = Vec::with_capacity(rs.rank());
        let mut any = false;
        let mut off = 0;
        for t in &rs.factors {
            let n = t.rank;
            let local: Vec<usize> = match (t.family, n) {
                (Family::A, n) if n >= 2 => (0..n).map(|i| n - 1 - i).collect(),
                (Family::D, n) if n >= 2 => {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.swap(n - 2, n - 1);
                    p
                }
                (Family::E, 6) => vec![5, 1, 4, 3, 2, 0],
                _ => (0..n).collect(),
            };
            any |= local.iter().enumerate().any(|(i, &p)| i != p);
            perm.extend(local.into_iter().map(|p| p + off));
            off += n;
        }
        if !any {
            return Err(Error::Automorphism(format!("{} has no diagram flip", rs.label)));
        }
        Self::from_simple_permutation(rs, &perm)
    }

    pub(crate) fn check_system(&self, rs: &RootSystem) -> Result<()> {
        if self.system == rs.id {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn kind(&self) -> AutKind {
        self.kind
    }

    pub fn is_diagram(&self) -> bool {
        self.kind == AutKind::Diagram
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Image of root index `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    /// Preimage of root index `k`.
    pub fn apply_inverse(&self, k: usize) -> usize {
        self.inv[k] as usize
    }

    pub fn apply_root(&self, rs: &RootSystem, r: &[i32]) -> Result<Root> {
        let k = rs.root_index(r).ok_or_else(|| Error::Root(r.to_vec()))?;
        Ok(rs.roots[self.apply(k)].clone())
    }

    /// For a diagram automorphism, `perm[i]` with `theta(alpha_i) = alpha_{perm[i]}`.
    pub fn simple_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_diagram() {
            return None;
        }
        let n = self.matrix.len();
        Some((0..n).map(|i| self.perm[i] as usize).collect())
    }

    /// Image of an index subset under a diagram automorphism.
    pub fn map_subset(&self, s: IndexSubset) -> Option<IndexSubset> {
        self.simple_permutation().map(|p| s.permuted(&p))
    }

    /// Preimage of an index subset under a diagram automorphism.
    pub fn preimage_subset(&self, s: IndexSubset) -> Option<IndexSubset> {
        if !self.is_diagram() {
            return None;
        }
        Some(IndexSubset::from_indices(
            (0..self.matrix.len()).filter(|&i| s.contains(self.perm[i] as usize)),
        ))
    }

    /// Whether the map sends the root subsystem spanned by `j` onto itself.
    pub fn preserves_subsystem(&self, rs: &RootSystem, j: IndexSubset) -> bool {
        self.maps_subsystem(rs, j, j)
    }

    /// Whether the map sends `Phi_j` onto `Phi_k`.
    pub fn maps_subsystem(&self, rs: &RootSystem, j: IndexSubset, k: IndexSubset) -> bool {
        let count = |s: IndexSubset| (0..rs.roots.len()).filter(|&r| rs.root_support(r).is_subset(s)).count();
        count(j) == count(k)
            && (0..rs.roots.len())
                .filter(|&r| rs.root_support(r).is_subset(j))
                .all(|r| rs.root_support(self.apply(r)).is_subset(k))
    }
}

/// Every diagram automorphism of `rs`: permutations of the simple indices
/// that preserve the Cartan matrix. Sorted with the identity first.
pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<RootAutomorphism> {
    let n = rs.rank();
    let a = &rs.cartan;
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        i: usize,
        a: &[Vec<i32>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = a.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for p in 0..n {
            if used[p] || a[i][i] != a[p][p] {
                continue;
            }
            if (0..i).all(|k| a[i][k] == a[p][perm[k]] && a[k][i] == a[perm[k]][p]) {
                used[p] = true;
                perm[i] = p;
                extend(i + 1, a, perm, used, out);
                used[p] = false;
            }
        }
    }

    let mut perms = Vec::new();
    extend(0, a, &mut perm, &mut used, &mut perms);
    perms.sort();
    for p in perms {
        out.push(RootAutomorphism::from_simple_permutation(rs, &p).expect("Cartan-preserving permutation"));
    }
    out
}
