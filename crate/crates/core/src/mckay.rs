//! McKay quivers and the relation families of their 2-translation algebras.
//!
//! Abelian groups ℤ/r₁ × ⋯ × ℤ/r_m act diagonally; vertex ids are
//! comma-joined residues ("1,3"), arrow ids are a letter per direction
//! followed by the source ("a:1,3" for i → i+e₁, the last letter for
//! i → i−e). ADE quivers use numeric vertex labels: "a:i,j" for the
//! ascending arrow, "b:j,i" for its reverse and "c:i" for the loop.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cover::{complete_tau_slice, z_separated};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::quiver::{BoundQuiver, Path, Quiver, RelationElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSpec {
    pub orders: Vec<usize>,
}

impl AbelianSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::Validation("group orders must be a nonempty list of positive integers".into()));
        }
        if orders.len() >= 26 {
            return Err(Error::Validation("at most 25 cyclic factors are supported".into()));
        }
        Ok(AbelianSpec { orders })
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    /// Group elements in lexicographic order (first coordinate major).
    pub fn elements(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &r in &self.orders {
            out = out.into_iter().flat_map(|p| (0..r).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        out
    }

    pub fn index_of(&self, g: &[usize]) -> usize {
        g.iter().zip(&self.orders).fold(0, |acc, (&x, &r)| acc * r + x)
    }

    /// g + e_t for t < m, and g - e for t = m.
    pub fn shift(&self, g: &[usize], t: usize) -> Vec<usize> {
        let m = self.orders.len();
        g.iter()
            .zip(&self.orders)
            .enumerate()
            .map(|(k, (&x, &r))| if t == m { (x + r - 1) % r } else if k == t { (x + 1) % r } else { x })
            .collect()
    }
}

pub fn abelian_vertex_id(g: &[usize]) -> String {
    g.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn direction_letter(t: usize) -> char {
    (b'a' + t as u8) as char
}

pub fn abelian_arrow_id(t: usize, g: &[usize]) -> String {
    format!("{}:{}", direction_letter(t), abelian_vertex_id(g))
}

pub fn mckay_abelian(spec: &AbelianSpec) -> Quiver {
    let m = spec.orders.len();
    let elements = spec.elements();
    let mut q = Quiver::with_vertices(elements.iter().map(|g| abelian_vertex_id(g))).expect("distinct residues");
    for g in &elements {
        for t in 0..=m {
            let h = spec.shift(g, t);
            q.add_arrow(abelian_arrow_id(t, g), spec.index_of(g), spec.index_of(&h)).expect("fresh arrow");
        }
    }
    q
}

/// Adds one loop per vertex, named "c:<vertex>" (primed until unused).
pub fn mckay_add_loops(q: &Quiver) -> Quiver {
    let mut out = q.clone();
    for i in 0..q.vertex_count() {
        let mut id = format!("c:{}", q.vertex_id(i));
        while out.arrow_by_id(&id).is_ok() {
            id.push('\'');
        }
        out.add_arrow(id, i, i).expect("fresh loop id");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeFamily {
    A,
    D,
    E6,
    E7,
    E8,
}

impl FromStr for AdeFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(AdeFamily::A),
            "D" => Ok(AdeFamily::D),
            "E6" => Ok(AdeFamily::E6),
            "E7" => Ok(AdeFamily::E7),
            "E8" => Ok(AdeFamily::E8),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

impl fmt::Display for AdeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AdeFamily::A => "A",
            AdeFamily::D => "D",
            AdeFamily::E6 => "E6",
            AdeFamily::E7 => "E7",
            AdeFamily::E8 => "E8",
        };
        f.write_str(s)
    }
}

/// Vertex labels and edges (ascending end first) of the extended diagram.
/// The cyclic A edge (l, 0) is oriented l → 0.
pub fn ade_diagram(family: AdeFamily, l: usize) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    let chain = |v: &[usize]| v.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>();
    match family {
        AdeFamily::A if l >= 4 => {
            let labels: Vec<usize> = (0..=l).collect();
            let edges = (0..=l).map(|i| (i, (i + 1) % (l + 1))).collect();
            Ok((labels, edges))
        }
        AdeFamily::D if l >= 4 => {
            let labels: Vec<usize> = (0..=l).collect();
            let mut edges = vec![(0, 2), (1, 2)];
            edges.extend(chain(&(2..=l - 2).collect::<Vec<_>>()));
            edges.push((l - 2, l - 1));
            edges.push((l - 2, l));
            Ok((labels, edges))
        }
        AdeFamily::E6 => {
            let mut edges = chain(&[1, 2, 3, 4, 5]);
            edges.extend([(3, 6), (6, 7)]);
            Ok(((1..=7).collect(), edges))
        }
        AdeFamily::E7 => {
            let mut edges = chain(&[0, 1, 2, 3, 4, 5, 6]);
            edges.push((3, 7));
            Ok(((0..=7).collect(), edges))
        }
        AdeFamily::E8 => {
            let mut edges = chain(&[1, 2, 3, 4, 5, 6, 7, 9]);
            edges.push((3, 8));
            Ok(((1..=9).collect(), edges))
        }
        _ => Err(Error::UnsupportedFamily(format!("{family}_{l}"))),
    }
}

/// The doubled extended diagram without loops.
pub fn ade_double(family: AdeFamily, l: usize) -> Result<Quiver> {
    let (labels, edges) = ade_diagram(family, l)?;
    let mut q = Quiver::with_vertices(labels.iter().map(ToString::to_string))?;
    let mut out: BTreeMap<usize, Vec<(usize, String)>> = BTreeMap::new();
    for &(i, j) in &edges {
        out.entry(i).or_default().push((j, format!("a:{i},{j}")));
        out.entry(j).or_default().push((i, format!("b:{j},{i}")));
    }
    for (i, mut targets) in out {
        targets.sort();
        for (j, id) in targets {
            q.add_arrow_by_ids(id, &i.to_string(), &j.to_string())?;
        }
    }
    Ok(q)
}

pub fn mckay_ade(family: AdeFamily, l: usize) -> Result<Quiver> {
    Ok(mckay_add_loops(&ade_double(family, l)?))
}

/// Character table with complex values given per conjugacy class.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub class_sizes: Vec<f64>,
    /// characters[row][class] as (re, im)
    pub characters: Vec<Vec<(f64, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CharacterTable {
    pub fn group_order(&self) -> f64 {
        self.class_sizes.iter().sum()
    }

    fn value(&self, row: usize, class: usize) -> Complex64 {
        let (re, im) = self.characters[row][class];
        Complex64::new(re, im)
    }

    pub fn row(&self, k: usize) -> Vec<Complex64> {
        (0..self.class_sizes.len()).map(|c| self.value(k, c)).collect()
    }

    /// Sum of the given rows.
    pub fn sum_of_rows(&self, rows: &[usize]) -> Vec<Complex64> {
        (0..self.class_sizes.len()).map(|c| rows.iter().map(|&k| self.value(k, c)).sum()).collect()
    }

    fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        let s: Complex64 =
            self.class_sizes.iter().zip(f.iter().zip(g)).map(|(&w, (a, b))| a * b.conj() * w).sum();
        s / self.group_order()
    }

    pub fn check_orthonormal(&self, tol: f64) -> Result<()> {
        let k = self.characters.len();
        if self.characters.iter().any(|r| r.len() != self.class_sizes.len()) {
            return Err(Error::NonOrthonormalTable("rows and class sizes differ in length".into()));
        }
        for i in 0..k {
            for j in 0..k {
                let v = self.inner(&self.row(i), &self.row(j));
                let want = if i == j { 1.0 } else { 0.0 };
                if (v - Complex64::new(want, 0.0)).norm() > tol {
                    return Err(Error::NonOrthonormalTable(format!("<chi_{i}, chi_{j}> = {v}")));
                }
            }
        }
        Ok(())
    }
}

pub const CHARACTER_TOLERANCE: f64 = 1e-6;

/// Arrow multiplicities a_ij = <χ_V χ_i, χ_j>; one arrow "x<k>:<i>,<j>"
/// per unit of multiplicity.
pub fn mckay_from_characters(table: &CharacterTable, chi_v: &[Complex64]) -> Result<Quiver> {
    table.check_orthonormal(CHARACTER_TOLERANCE)?;
    let k = table.characters.len();
    let labels: Vec<String> = match &table.labels {
        Some(l) if l.len() == k => l.clone(),
        Some(_) => return Err(Error::Validation("label count differs from row count".into())),
        None => (0..k).map(|i| i.to_string()).collect(),
    };
    let mut q = Quiver::with_vertices(labels.clone())?;
    for i in 0..k {
        let product: Vec<Complex64> = table.row(i).iter().zip(chi_v).map(|(a, b)| a * b).collect();
        for j in 0..k {
            let v = table.inner(&product, &table.row(j));
            let rounded = v.re.round();
            if (v - Complex64::new(rounded, 0.0)).norm() > CHARACTER_TOLERANCE || rounded < 0.0 {
                return Err(Error::NotIntegerMultiplicity { from: i, to: j, value: v.re });
            }
            for m in 0..rounded as usize {
                q.add_arrow(format!("x{m}:{},{}", labels[i], labels[j]), i, j)?;
            }
        }
    }
    Ok(q)
}

/// Character table of a finite abelian group ℤ/r₁ × ⋯ × ℤ/r_m, rows and
/// classes both in group-element order, labelled like the McKay vertices.
pub fn abelian_character_table(spec: &AbelianSpec) -> CharacterTable {
    let elements = spec.elements();
    let characters = elements
        .iter()
        .map(|chi| {
            elements
                .iter()
                .map(|g| {
                    let phase: f64 = chi
                        .iter()
                        .zip(g)
                        .zip(&spec.orders)
                        .map(|((&a, &x), &r)| (a * x) as f64 / r as f64)
                        .sum();
                    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
                    (z.re, z.im)
                })
                .collect()
        })
        .collect();
    CharacterTable {
        class_sizes: vec![1.0; elements.len()],
        characters,
        labels: Some(elements.iter().map(|g| abelian_vertex_id(g)).collect()),
    }
}

/// Per-vertex parameters a, b, c of the (s, r) family, in vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct SrParams {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl SrParams {
    pub fn constant(s: usize, r: usize, x: Rational) -> Self {
        let v = vec![x; s * r];
        SrParams { a: v.clone(), b: v.clone(), c: v }
    }

    pub fn ones(s: usize, r: usize) -> Self {
        Self::constant(s, r, Rational::one())
    }

    fn check(&self, n: usize) -> Result<()> {
        for (name, v) in [("a", &self.a), ("b", &self.b), ("c", &self.c)] {
            if v.len() != n {
                return Err(Error::Validation(format!("parameter list {name} needs {n} entries")));
            }
            if let Some(k) = v.iter().position(Zero::is_zero) {
                return Err(Error::ParameterZero(format!("{name}[{k}]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Primal,
    Dual,
}

fn sr_spec(s: usize, r: usize) -> Result<AbelianSpec> {
    if s < 4 || r < 4 {
        return Err(Error::SizeTooSmall(vec![s, r]));
    }
    AbelianSpec::new(vec![s, r])
}

fn term(q: &Quiver, coeff: Rational, arrows: [String; 2]) -> (Rational, Path) {
    (coeff, q.path_from_ids(&arrows).expect("composable arrows"))
}

fn sr_relations(s: usize, r: usize, params: &SrParams, which: Which) -> Result<BoundQuiver> {
    let spec = sr_spec(s, r)?;
    params.check(s * r)?;
    let q = mckay_abelian(&spec);
    let id = |t: usize, g: &[usize]| abelian_arrow_id(t, g);
    let (ea, eb, ec) = (0, 1, 2);
    let coefficient = |x: &Rational| match which {
        Which::Primal => x.clone(),
        Which::Dual => -x.recip(),
    };
    let mut raw = Vec::new();
    for g in spec.elements() {
        let k = spec.index_of(&g);
        let plus1 = spec.shift(&g, 0);
        let plus2 = spec.shift(&g, 1);
        let minus = spec.shift(&g, 2);
        // z(γ, i, c) = c·β_{i+e1}α_i + α_{i+e2}β_i
        raw.push(vec![
            term(&q, coefficient(&params.c[k]), [id(eb, &plus1), id(ea, &g)]),
            term(&q, rat(1), [id(ea, &plus2), id(eb, &g)]),
        ]);
        // z(β, i, b) = b·α_{i-e}γ_i + γ_{i+e1}α_i
        raw.push(vec![
            term(&q, coefficient(&params.b[k]), [id(ea, &minus), id(ec, &g)]),
            term(&q, rat(1), [id(ec, &plus1), id(ea, &g)]),
        ]);
        // z(α, i, a) = a·β_{i-e}γ_i + γ_{i+e2}β_i
        raw.push(vec![
            term(&q, coefficient(&params.a[k]), [id(eb, &minus), id(ec, &g)]),
            term(&q, rat(1), [id(ec, &plus2), id(eb, &g)]),
        ]);
        if which == Which::Primal {
            raw.push(vec![term(&q, rat(1), [id(ea, &plus1), id(ea, &g)])]);
            raw.push(vec![term(&q, rat(1), [id(eb, &plus2), id(eb, &g)])]);
            raw.push(vec![term(&q, rat(1), [id(ec, &minus), id(ec, &g)])]);
        }
    }
    let relations = crate::quiver::normalize_relations(raw)?;
    BoundQuiver::new(q, relations, Some(2))
}

/// Commutation and zero relations of the 2-translation algebra on the
/// McKay quiver of ℤ/s × ℤ/r.
pub fn relations_sr(s: usize, r: usize, params: &SrParams) -> Result<BoundQuiver> {
    sr_relations(s, r, params, Which::Primal)
}

/// Dual family: each commutation coefficient x becomes -1/x, zero relations
/// are dropped.
pub fn relations_sr_dual(s: usize, r: usize, params: &SrParams) -> Result<BoundQuiver> {
    sr_relations(s, r, params, Which::Dual)
}

/// Levels 0..2 of the separated cover with all coefficients -1: zero
/// relations plus p − q commutations (primal), or p + q commutations
/// (dual).
pub fn slice_relations_sr(s: usize, r: usize, which: Which) -> Result<BoundQuiver> {
    sr_spec(s, r)?;
    let minus = SrParams::constant(s, r, rat(-1));
    let base = match which {
        Which::Primal => relations_sr(s, r, &minus)?,
        Which::Dual => relations_sr_dual(s, r, &minus)?,
    };
    complete_tau_slice(&z_separated(&base, 0, 2), 0)
}

/// Parameters of the Ξ family. Missing entries default to 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct XiParams {
    /// keyed by the (ascending source, target) labels of α arrows
    pub a: BTreeMap<(usize, usize), Rational>,
    /// keyed by vertex label
    pub c: BTreeMap<usize, Rational>,
    /// keyed by vertex label; entry r-1 multiplies the r-th out-neighbour
    pub b: BTreeMap<usize, Vec<Rational>>,
}

impl XiParams {
    fn a(&self, e: (usize, usize)) -> Rational {
        self.a.get(&e).cloned().unwrap_or_else(Rational::one)
    }

    fn c(&self, i: usize) -> Rational {
        self.c.get(&i).cloned().unwrap_or_else(Rational::one)
    }

    fn b(&self, i: usize, k: usize) -> Rational {
        self.b.get(&i).and_then(|v| v.get(k)).cloned().unwrap_or_else(Rational::one)
    }

    fn check(&self) -> Result<()> {
        let zero_a = self.a.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| format!("a{k:?}"));
        let zero_c = self.c.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| format!("c[{k}]"));
        let zero_b = self.b.iter().find(|(_, v)| v.iter().any(Zero::is_zero)).map(|(k, _)| format!("b[{k}]"));
        match zero_a.or(zero_c).or(zero_b) {
            Some(name) => Err(Error::ParameterZero(name)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct XiSpec {
    pub family: AdeFamily,
    pub l: usize,
    /// vertex labels whose loop squares to zero
    pub j: BTreeSet<usize>,
    pub params: XiParams,
}

impl XiSpec {
    pub fn new(family: AdeFamily, l: usize) -> Self {
        XiSpec { family, l, j: BTreeSet::new(), params: XiParams::default() }
    }

    pub fn with_j(mut self, j: impl IntoIterator<Item = usize>) -> Self {
        self.j = j.into_iter().collect();
        self
    }

    pub fn vertex_labels(&self) -> Result<Vec<usize>> {
        Ok(ade_diagram(self.family, self.l)?.0)
    }
}

fn xi_relations(spec: &XiSpec, which: Which) -> Result<BoundQuiver> {
    spec.params.check()?;
    let (labels, edges) = ade_diagram(spec.family, spec.l)?;
    if let Some(bad) = spec.j.iter().find(|v| !labels.contains(v)) {
        return Err(Error::UnknownVertex(bad.to_string()));
    }
    let q = mckay_ade(spec.family, spec.l)?;
    let path = |ids: &[String]| q.path_from_ids(ids).expect("composable arrows");
    let loop_id = |i: usize| format!("c:{i}");
    let mut neighbours: BTreeMap<usize, Vec<(usize, String, String)>> = BTreeMap::new();
    let mut raw: Vec<Vec<(Rational, Path)>> = Vec::new();
    for &(i, j) in &edges {
        let (alpha, beta) = (format!("a:{i},{j}"), format!("b:{j},{i}"));
        neighbours.entry(i).or_default().push((j, alpha.clone(), beta.clone()));
        neighbours.entry(j).or_default().push((i, beta.clone(), alpha.clone()));
        let a = spec.params.a((i, j));
        match which {
            Which::Primal => {
                raw.push(vec![
                    (rat(1), path(&[alpha.clone(), loop_id(i)])),
                    (-a, path(&[loop_id(j), alpha.clone()])),
                ]);
                raw.push(vec![(rat(1), path(&[beta.clone(), loop_id(j)])), (rat(-1), path(&[loop_id(i), beta.clone()]))]);
            }
            Which::Dual => {
                raw.push(vec![(a, path(&[alpha.clone(), loop_id(i)])), (rat(1), path(&[loop_id(j), alpha.clone()]))]);
                raw.push(vec![(rat(1), path(&[beta.clone(), loop_id(j)])), (rat(1), path(&[loop_id(i), beta.clone()]))]);
            }
        }
    }
    if which == Which::Primal {
        // two non-loop arrows with distinct endpoints compose to zero
        for (&j, around) in &neighbours {
            for (i, _, into_j) in around {
                for (h, out_of_j, _) in around {
                    if i != h {
                        raw.push(vec![(rat(1), path(&[out_of_j.clone(), into_j.clone()]))]);
                    }
                }
            }
            let _ = j;
        }
    }
    for (&i, around) in &neighbours {
        let mut around = around.clone();
        around.sort();
        // P_r = ζ_r μ_r, the round trip through the r-th neighbour
        let p: Vec<Path> = around.iter().map(|(_, mu, zeta)| path(&[zeta.clone(), mu.clone()])).collect();
        let gamma2 = path(&[loop_id(i), loop_id(i)]);
        let k = p.len();
        let b = |r: usize| spec.params.b(i, r - 1);
        let c = spec.params.c(i);
        let killed = spec.j.contains(&i);
        match (which, killed) {
            (Which::Primal, false) => {
                raw.extend(ratio_relations(&p, &b));
                raw.push(vec![(rat(1), gamma2.clone()), (-c, p[0].clone())]);
            }
            (Which::Primal, true) => {
                raw.push(vec![(rat(1), gamma2.clone())]);
                raw.extend(ratio_relations(&p, &b));
            }
            (Which::Dual, false) => {
                let mut v = dual_ratio_vector(&p, &b);
                v.push((c, gamma2.clone()));
                raw.push(v);
            }
            (Which::Dual, true) => raw.push(dual_ratio_vector(&p, &b)),
        }
        debug_assert!(k >= 1);
    }
    let relations = crate::quiver::normalize_relations(raw)?;
    BoundQuiver::new(q, relations, Some(2))
}

/// P_1 − b P_2 for two neighbours, b_r P_1 − P_r otherwise.
fn ratio_relations(p: &[Path], b: &dyn Fn(usize) -> Rational) -> Vec<Vec<(Rational, Path)>> {
    match p.len() {
        1 => Vec::new(),
        2 => vec![vec![(rat(1), p[0].clone()), (-b(1), p[1].clone())]],
        k => (1..k).map(|r| vec![(b(r), p[0].clone()), (rat(-1), p[r].clone())]).collect(),
    }
}

/// The vector spanning the complement of `ratio_relations` among the P_r.
fn dual_ratio_vector(p: &[Path], b: &dyn Fn(usize) -> Rational) -> Vec<(Rational, Path)> {
    match p.len() {
        1 => vec![(rat(1), p[0].clone())],
        2 => vec![(rat(1), p[0].clone()), (b(1).recip(), p[1].clone())],
        k => std::iter::once((rat(1), p[0].clone())).chain((1..k).map(|r| (b(r), p[r].clone()))).collect(),
    }
}

pub fn relations_xi(spec: &XiSpec) -> Result<BoundQuiver> {
    xi_relations(spec, Which::Primal)
}

pub fn relations_xi_dual(spec: &XiSpec) -> Result<BoundQuiver> {
    xi_relations(spec, Which::Dual)
}

/// Levels 0..2 of the separated cover of the Ξ family at default
/// parameters.
pub fn slice_relations_xi(family: AdeFamily, l: usize, j: &BTreeSet<usize>, which: Which) -> Result<BoundQuiver> {
    let spec = XiSpec { family, l, j: j.clone(), params: XiParams::default() };
    let base = match which {
        Which::Primal => relations_xi(&spec)?,
        Which::Dual => relations_xi_dual(&spec)?,
    };
    complete_tau_slice(&z_separated(&base, 0, 2), 0)
}

/// Relation elements of a bound quiver touching the vertex pair (i, j).
pub fn relations_at(bq: &BoundQuiver, i: usize, j: usize) -> Vec<&RelationElement> {
    bq.relations().iter().filter(|r| r.source() == i && r.target() == j).collect()
}
