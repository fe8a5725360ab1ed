//! Reduced curve germs as subalgebras of `⊕ k[t_i]/(t_i^N)` and their
//! invariants δ, r, t and e.
//!
//! The dualizing module is modelled by Rosenlicht forms: tuples of Laurent
//! forms `η_i = Σ a_{i,k} t_i^k dt_i` with `Σ_i Res(f η_i) = 0` for all `f`
//! in the local ring. Forms with exponents `>= K_i = max(c_i, 1)` lie in
//! `m·ω`, so everything is computed on the window `[−c_i − 1, K_i)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix, Span};
use crate::rational::{format_rational, parse_rational, Rational};

/// One element of `⊕ k[t_i]`: a coefficient list per branch.
pub type Tuple = Vec<Vec<Rational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub name: String,
    pub branches: usize,
    pub generators: Vec<Tuple>,
    pub conductor: Vec<usize>,
    pub quasihomogeneous: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermInvariants {
    pub delta: usize,
    pub r: usize,
    pub t: usize,
    pub e: usize,
}

/// JSON form of a germ; coefficients are exact-rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermJson {
    pub name: String,
    pub branches: usize,
    pub truncation: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    pub conductor: Vec<usize>,
    pub quasihomogeneous: bool,
}

fn mono(k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k + 1];
    v[k] = Rational::one();
    v
}

/// Tuple with `t^k` on branch `i` of `r` and zero elsewhere.
fn on_branch(r: usize, i: usize, k: usize) -> Tuple {
    (0..r).map(|j| if j == i { mono(k) } else { vec![] }).collect()
}

fn tuple(parts: &[Option<usize>]) -> Tuple {
    parts.iter().map(|p| p.map(mono).unwrap_or_default()).collect()
}

impl Germ {
    pub fn new(name: &str, branches: usize, generators: Vec<Tuple>, conductor: Vec<usize>, quasihomogeneous: bool) -> Result<Germ> {
        if branches == 0 {
            return Err(Error::Invalid("a germ needs at least one branch".into()));
        }
        if conductor.len() != branches || generators.iter().any(|g| g.len() != branches) {
            return Err(Error::Invalid("branch count mismatch".into()));
        }
        for g in &generators {
            if g.iter().any(|b| b.first().is_some_and(|c| !c.is_zero())) {
                return Err(Error::Invalid("generators must vanish at the singular point".into()));
            }
        }
        Ok(Germ { name: name.to_string(), branches, generators, conductor, quasihomogeneous })
    }

    /// Default truncation `2·max K + 2` with `K_i = max(c_i, 1)`.
    pub fn default_truncation(&self) -> usize {
        2 * self.window_top().into_iter().max().unwrap_or(1) + 2
    }

    fn window_top(&self) -> Vec<usize> {
        self.conductor.iter().map(|&c| c.max(1)).collect()
    }

    pub fn to_json(&self) -> GermJson {
        GermJson {
            name: self.name.clone(),
            branches: self.branches,
            truncation: self.default_truncation(),
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|b| b.iter().map(format_rational).collect()).collect())
                .collect(),
            conductor: self.conductor.clone(),
            quasihomogeneous: self.quasihomogeneous,
        }
    }

    pub fn from_json(j: &GermJson) -> Result<Germ> {
        let gens = j
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|b| b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Tuple>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Germ::new(&j.name, j.branches, gens, j.conductor.clone(), j.quasihomogeneous)?;
        if j.truncation < g.conductor.iter().max().copied().unwrap_or(0) + 2 {
            return Err(Error::Invalid("truncation must exceed the conductor by at least 2".into()));
        }
        Ok(g)
    }
}

/// Named germs.
pub fn germ_catalog(name: &str, n: Option<usize>) -> Result<Germ> {
    let need_n = |lo: usize| -> Result<usize> {
        let n = n.ok_or_else(|| Error::Invalid(format!("`{name}` needs a parameter n")))?;
        if n < lo {
            return Err(Error::Invalid(format!("`{name}` needs n >= {lo}")));
        }
        Ok(n)
    };
    match name {
        "line" => Germ::new("line", 1, vec![tuple(&[Some(1)])], vec![0], true),
        "node" => Germ::new("node", 2, vec![tuple(&[Some(1), None]), tuple(&[None, Some(1)])], vec![1, 1], true),
        "cusp" => Germ::new("cusp", 1, vec![tuple(&[Some(2)]), tuple(&[Some(3)])], vec![2], true),
        "tacnode" => Germ::new(
            "tacnode",
            2,
            vec![tuple(&[Some(1), Some(1)]), tuple(&[None, Some(2)])],
            vec![2, 2],
            true,
        ),
        "elliptic_nfold" => {
            let n = need_n(3)?;
            // lines along e_1..e_{n-1} and along (1,...,1) in A^{n-1}
            let gens = (0..n - 1)
                .map(|j| (0..n).map(|i| if i == j || i == n - 1 { mono(1) } else { vec![] }).collect())
                .collect();
            Germ::new(&format!("elliptic_nfold({n})"), n, gens, vec![2; n], true)
        }
        "coordinate_cross" => {
            let n = need_n(2)?;
            let gens = (0..n).map(|j| on_branch(n, j, 1)).collect();
            Germ::new(&format!("coordinate_cross({n})"), n, gens, vec![1; n], true)
        }
        "genus2_cusp_345" => Germ::new(
            "genus2_cusp_345",
            1,
            vec![tuple(&[Some(3)]), tuple(&[Some(4)]), tuple(&[Some(5)])],
            vec![3],
            true,
        ),
        "genus2_cusp_25" => Germ::new("genus2_cusp_25", 1, vec![tuple(&[Some(2)]), tuple(&[Some(5)])], vec![4], true),
        "planar_cusp_line" => Germ::new(
            "planar_cusp_line",
            2,
            vec![tuple(&[Some(2), None]), tuple(&[Some(3), Some(1)])],
            vec![4, 2],
            true,
        ),
        "cusp_line_Ccusp10" => Germ::new(
            "cusp_line_Ccusp10",
            2,
            vec![tuple(&[Some(2), Some(1)]), tuple(&[Some(3), None]), tuple(&[None, Some(2)])],
            vec![3, 2],
            true,
        ),
        "osculating_P1s" => Germ::new(
            "osculating_P1s",
            2,
            vec![tuple(&[Some(1), Some(1)]), tuple(&[None, Some(3)])],
            vec![3, 3],
            true,
        ),
        // node glued to a line along a length-2 subscheme tangent to neither branch
        "node_tangent_line" => Germ::new(
            "node_tangent_line",
            3,
            vec![tuple(&[Some(1), None, Some(1)]), tuple(&[None, Some(1), Some(1)]), tuple(&[None, None, Some(2)])],
            vec![2, 2, 2],
            true,
        ),
        _ => Err(Error::Invalid(format!("unknown germ `{name}`"))),
    }
}

/// Names accepted by [`germ_catalog`].
pub const CATALOG_NAMES: [&str; 12] = [
    "line",
    "node",
    "cusp",
    "tacnode",
    "elliptic_nfold",
    "coordinate_cross",
    "genus2_cusp_345",
    "genus2_cusp_25",
    "planar_cusp_line",
    "cusp_line_Ccusp10",
    "osculating_P1s",
    "node_tangent_line",
];

/// Union of two germs meeting transversally (in independent directions).
pub fn transversal_union(a: &Germ, b: &Germ) -> Result<Germ> {
    let r = a.branches + b.branches;
    let mut gens = Vec::new();
    for g in &a.generators {
        let mut t = g.clone();
        t.extend(std::iter::repeat_n(vec![], b.branches));
        gens.push(t);
    }
    for g in &b.generators {
        let mut t: Tuple = vec![vec![]; a.branches];
        t.extend(g.iter().cloned());
        gens.push(t);
    }
    let conductor = a.conductor.iter().chain(&b.conductor).map(|&c| c.max(1)).collect();
    Germ::new(
        &format!("{}+{}", a.name, b.name),
        r,
        gens,
        conductor,
        a.quasihomogeneous && b.quasihomogeneous,
    )
}

/// Dense vectors in `⊕ k[t_i]/(t_i^N)`.
struct Space {
    r: usize,
    n: usize,
}

impl Space {
    fn dim(&self) -> usize {
        self.r * self.n
    }

    fn embed(&self, t: &Tuple) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (i, b) in t.iter().enumerate() {
            for (k, c) in b.iter().enumerate().take(self.n) {
                v[i * self.n + k] = c.clone();
            }
        }
        v
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut v = vec![Rational::zero(); self.dim()];
        for i in 0..self.r {
            for x in 0..n {
                let ax = &a[i * n + x];
                if ax.is_zero() {
                    continue;
                }
                for y in 0..n - x {
                    let by = &b[i * n + y];
                    if !by.is_zero() {
                        v[i * n + x + y] += ax * by;
                    }
                }
            }
        }
        v
    }

    fn one(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for i in 0..self.r {
            v[i * self.n] = Rational::one();
        }
        v
    }
}

struct Computed {
    delta: usize,
    t: usize,
    semigroup: Option<Vec<usize>>,
}

fn compute(g: &Germ, n: usize) -> Result<Computed> {
    let r = g.branches;
    let top = g.window_top();
    if n < g.conductor.iter().zip(&top).map(|(c, k)| c + k + 1).max().unwrap_or(0) {
        return Err(Error::Invalid(format!("truncation {n} too small for germ `{}`", g.name)));
    }
    let sp = Space { r, n };
    let gens: Vec<Vec<Rational>> = g.generators.iter().map(|t| sp.embed(t)).collect();

    // the truncated algebra: closure of span{1, gens} under multiplication by gens
    let mut alg = Span::new();
    let mut queue = vec![sp.one()];
    alg.insert(&sp.one());
    while let Some(v) = queue.pop() {
        for gv in &gens {
            let p = sp.mul(&v, gv);
            if alg.insert(&p) {
                queue.push(p);
            }
        }
    }
    for (i, &c) in g.conductor.iter().enumerate() {
        for k in c..n {
            if !alg.contains(&sp.embed(&on_branch(r, i, k))) {
                return Err(Error::Invalid(format!(
                    "germ `{}`: t^{k} on branch {i} is not in the algebra, conductor too small",
                    g.name
                )));
            }
        }
    }
    let basis: Vec<Vec<Rational>> = alg.basis().cloned().collect();
    for b in &basis {
        let c0 = &b[0];
        if (1..r).any(|i| &b[i * n] != c0) {
            return Err(Error::Invalid(format!("germ `{}` is not local", g.name)));
        }
    }
    let delta = sp.dim() - alg.dim();

    // window of Laurent exponents [-c_i - 1, K_i) per branch
    let lo: Vec<i64> = g.conductor.iter().map(|&c| -(c as i64) - 1).collect();
    let hi: Vec<i64> = top.iter().map(|&k| k as i64).collect();
    let mut offs = vec![0usize];
    for i in 0..r {
        offs.push(offs[i] + (hi[i] - lo[i]) as usize);
    }
    let wdim = offs[r];
    let widx = |i: usize, k: i64| -> Option<usize> {
        if k >= lo[i] && k < hi[i] {
            Some(offs[i] + (k - lo[i]) as usize)
        } else {
            None
        }
    };

    // residue conditions Σ_i Σ_m f_{i,m} a_{i,-m-1} = 0
    let mut conds: Matrix = Vec::new();
    for f in &basis {
        let mut row = vec![Rational::zero(); wdim];
        for i in 0..r {
            for m in 0..n {
                let c = &f[i * n + m];
                if c.is_zero() {
                    continue;
                }
                if let Some(j) = widx(i, -(m as i64) - 1) {
                    row[j] += c;
                }
            }
        }
        conds.push(row);
    }
    let omega = kernel(&conds, wdim);

    // m = elements of the algebra with zero constant term
    let one = sp.one();
    let m_basis: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            let c = b[0].clone();
            b.iter().zip(&one).map(|(x, o)| x - &c * o).collect::<Vec<_>>()
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let mut m_omega = Span::new();
    for f in &m_basis {
        for eta in &omega {
            let mut prod = vec![Rational::zero(); wdim];
            for i in 0..r {
                for m in 0..n {
                    let c = &f[i * n + m];
                    if c.is_zero() {
                        continue;
                    }
                    for k in lo[i]..hi[i] {
                        let a = &eta[widx(i, k).unwrap()];
                        if a.is_zero() {
                            continue;
                        }
                        if let Some(j) = widx(i, k + m as i64) {
                            prod[j] += c * a;
                        }
                    }
                }
            }
            m_omega.insert(&prod);
        }
    }
    let t = omega.len() - m_omega.dim();

    let semigroup = if r == 1 {
        let mut vals: Vec<usize> = alg.pivots().collect();
        vals.sort_unstable();
        Some(vals)
    } else {
        None
    };
    Ok(Computed { delta, t, semigroup })
}

fn stable(g: &Germ) -> Result<Computed> {
    let n = g.default_truncation();
    let a = compute(g, n)?;
    let b = compute(g, n + 2)?;
    if a.delta != b.delta || a.t != b.t {
        return Err(Error::Invalid(format!("invariants of `{}` did not stabilise at truncation {n}", g.name)));
    }
    Ok(a)
}

/// `(δ, t)` at an explicit truncation, without the stabilization check.
pub fn delta_t_at(g: &Germ, n: usize) -> Result<(usize, usize)> {
    let c = compute(g, n)?;
    Ok((c.delta, c.t))
}

pub fn delta(g: &Germ) -> Result<usize> {
    Ok(stable(g)?.delta)
}

pub fn t_invariant(g: &Germ) -> Result<usize> {
    Ok(stable(g)?.t)
}

/// `e = 2δ − r + t`, only for quasihomogeneous germs.
pub fn e_invariant(g: &Germ) -> Result<usize> {
    Ok(invariants(g)?.e)
}

pub fn invariants(g: &Germ) -> Result<GermInvariants> {
    if !g.quasihomogeneous {
        return Err(Error::Invalid(format!(
            "germ `{}` is not flagged quasihomogeneous; e = 2δ − r + t is not asserted",
            g.name
        )));
    }
    let c = stable(g)?;
    let e = 2 * c.delta + c.t - g.branches;
    Ok(GermInvariants { delta: c.delta, r: g.branches, t: c.t, e })
}

/// Value semigroup of a one-branch germ, below the conductor.
pub fn value_semigroup(g: &Germ) -> Result<Option<Vec<usize>>> {
    let c = stable(g)?;
    Ok(c.semigroup.map(|s| s.into_iter().filter(|&v| v < g.conductor[0]).collect()))
}

/// Symmetry of the value semigroup of a one-branch germ: `k ∈ S ⟺ c − 1 − k ∉ S`.
pub fn semigroup_symmetric(g: &Germ) -> Result<Option<bool>> {
    let Some(s) = value_semigroup(g)? else {
        return Ok(None);
    };
    let c = g.conductor[0];
    if c == 0 {
        return Ok(Some(true));
    }
    Ok(Some((0..c).all(|k| s.contains(&k) != s.contains(&(c - 1 - k)))))
}
