//! Simple roots, Cartan matrices, Dynkin classification and Weyl orbits.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::curves::{self, ClassSet, CurveKind};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice, Kind};

/// Dynkin type as a list of simple components, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinType(Vec<(Kind, usize)>);

impl DynkinType {
    pub fn components(&self) -> &[(Kind, usize)] {
        &self.0
    }

    pub fn is_simple(&self) -> bool {
        self.0.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.1).sum()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (kind, r)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("×")?;
            }
            write!(f, "{kind}{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystemData {
    lattice: IntersectionLattice,
    simple_roots: Vec<DivisorClass>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<DivisorClass>,
    /// Coordinates of each positive root in the simple-root basis.
    positive_coords: Vec<Vec<i64>>,
    type_label: DynkinType,
}

impl RootSystemData {
    pub fn new(lattice: &IntersectionLattice) -> Result<Self> {
        let simple = simple_roots(lattice);
        for alpha in &simple {
            if !curves::satisfies(lattice, alpha, CurveKind::Roots) {
                return Err(Error::Internal(format!(
                    "simple root {} fails the root equations",
                    lattice.format_class(alpha)
                )));
            }
        }
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|a| {
                simple
                    .iter()
                    .map(|b| -lattice.pair_unchecked(a, b))
                    .collect()
            })
            .collect();
        let type_label = classify_cartan(&cartan)?;
        let (positive_roots, positive_coords) = close_positive(lattice, &simple);
        Ok(RootSystemData {
            lattice: lattice.clone(),
            simple_roots: simple,
            cartan,
            positive_roots,
            positive_coords,
            type_label,
        })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple_roots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[DivisorClass] {
        &self.positive_roots
    }

    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_coords
    }

    pub fn type_label(&self) -> &DynkinType {
        &self.type_label
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Index of the left-end node `alpha_L = alpha_n`.
    pub fn left_node(&self) -> usize {
        self.rank() - 1
    }
}

/// Simple roots in the fixed bases:
/// E: `a1 = -h + l1 + l2 + l3`, `ai = li - l(i-1)`;
/// D: `a1 = -f + l1 + l2`, `ai = li - l(i-1)`;
/// A: `ai = l(i+1) - li`.
pub fn simple_roots(lat: &IntersectionLattice) -> Vec<DivisorClass> {
    let n = lat.family().n();
    let l = |i: usize| lat.exceptional(i);
    match lat.family().kind() {
        Kind::E => {
            let h = lat.basis("h").expect("E lattice has h");
            let mut out = vec![&(&(&l(1) + &l(2)) + &l(3)) - &h];
            out.extend((2..=n).map(|i| &l(i) - &l(i - 1)));
            out
        }
        Kind::D => {
            let f = lat.basis("f").expect("D lattice has f");
            let mut out = vec![&(&l(1) + &l(2)) - &f];
            out.extend((2..=n).map(|i| &l(i) - &l(i - 1)));
            out
        }
        Kind::A => (1..=n).map(|i| &l(i + 1) - &l(i)).collect(),
    }
}

/// Classifies a simply laced Cartan matrix by the shape of its Dynkin graph.
#[allow(clippy::needless_range_loop)]
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Result<DynkinType> {
    let r = cartan.len();
    for i in 0..r {
        if cartan[i].len() != r || cartan[i][i] != 2 {
            return Err(Error::Internal("Cartan matrix must have diagonal 2".into()));
        }
        for j in 0..r {
            if i != j && (cartan[i][j] != cartan[j][i] || !matches!(cartan[i][j], 0 | -1)) {
                return Err(Error::Internal(format!(
                    "entry ({i},{j}) = {} is not simply laced",
                    cartan[i][j]
                )));
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..r)
        .map(|i| (0..r).filter(|&j| j != i && cartan[i][j] != 0).collect())
        .collect();
    let mut seen = vec![false; r];
    let mut comps = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comps.push(classify_component(&adj, &nodes)?);
    }
    comps.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
    Ok(DynkinType(comps))
}

fn classify_component(adj: &[Vec<usize>], nodes: &[usize]) -> Result<(Kind, usize)> {
    let m = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != m {
        return Err(Error::Internal("Dynkin graph has a cycle".into()));
    }
    let branch: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| adj[v].len() >= 3)
        .collect();
    match branch.as_slice() {
        [] => Ok((Kind::A, m)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&w| arm_length(adj, *b, w)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok((Kind::D, m)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok((Kind::E, m)),
                _ => Err(Error::Internal(format!(
                    "arms {arms:?} are not of ADE type"
                ))),
            }
        }
        _ => Err(Error::Internal("Dynkin graph is not of ADE type".into())),
    }
}

fn arm_length(adj: &[Vec<usize>], from: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Closure of the simple roots under `beta -> beta + alpha_i` whenever
/// `beta . alpha_i = 1`, sorted by height and then coordinates.
fn close_positive(
    lat: &IntersectionLattice,
    simple: &[DivisorClass],
) -> (Vec<DivisorClass>, Vec<Vec<i64>>) {
    let r = simple.len();
    let mut roots: Vec<(Vec<i64>, DivisorClass)> = simple
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut c = vec![0; r];
            c[i] = 1;
            (c, a.clone())
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().map(|(c, _)| c.clone()).collect();
    let mut idx = 0;
    while idx < roots.len() {
        let (coords, beta) = roots[idx].clone();
        for (i, alpha) in simple.iter().enumerate() {
            if lat.pair_unchecked(&beta, alpha) == 1 {
                let mut c = coords.clone();
                c[i] += 1;
                if seen.insert(c.clone()) {
                    roots.push((c, &beta + alpha));
                }
            }
        }
        idx += 1;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| a.0.cmp(&b.0))
    });
    roots.into_iter().map(|(c, d)| (d, c)).unzip()
}

/// Simply laced reflection `s_alpha(x) = x + (x.alpha) alpha` for `alpha^2 = -2`.
pub fn reflect(
    lat: &IntersectionLattice,
    x: &DivisorClass,
    alpha: &DivisorClass,
) -> Result<DivisorClass> {
    if lat.square(alpha)? != -2 {
        return Err(Error::NotARoot(lat.format_class(alpha)));
    }
    let t = lat.pair(x, alpha)?;
    Ok(x + &alpha.scaled(t))
}

/// Orbit of `seed` under the group generated by the simple reflections.
pub fn weyl_orbit(rs: &RootSystemData, seed: &DivisorClass) -> Result<Vec<DivisorClass>> {
    let lat = rs.lattice();
    lat.pair(seed, seed)?;
    let mut visited: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut queue = VecDeque::new();
    visited.insert(seed.clone());
    queue.push_back(seed.clone());
    while let Some(x) = queue.pop_front() {
        for alpha in rs.simple_roots() {
            let t = lat.pair_unchecked(&x, alpha);
            if t == 0 {
                continue;
            }
            let y = &x + &alpha.scaled(t);
            if visited.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(visited.into_iter().collect())
}

/// All roots as a class set: positive roots and their negatives.
pub fn all_roots(rs: &RootSystemData) -> ClassSet {
    let mut v: Vec<DivisorClass> = rs.positive_roots().to_vec();
    v.extend(rs.positive_roots().iter().map(|r| -r));
    ClassSet::new(CurveKind::Roots, v)
}
