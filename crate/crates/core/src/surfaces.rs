//! Zariski decomposition on intersection-matrix models.
//!
//! A model lists vertical prime divisors `D_1..D_k` over the base and their
//! intersection matrix. Nefness over the base means nonnegative intersection
//! with each listed class; the model is a finite abstraction, not a scheme,
//! and it cannot tell vertical from horizontal classes, so it trusts the
//! caller's list.
//!
//! A divisor is `Σ a_i D_i` plus an ambient part known only through its
//! intersections with the `D_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Deserialize)]
struct RawModel {
    classes: Vec<String>,
    q: Vec<Vec<Rational>>,
}

/// Classes `D_i` with `q[i][j] = D_i·D_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct SurfaceModel {
    classes: Vec<String>,
    q: Vec<Vec<Rational>>,
}

impl TryFrom<RawModel> for SurfaceModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        SurfaceModel::new(raw.classes, raw.q)
    }
}

impl SurfaceModel {
    /// Requires a symmetric matrix matching the class list and nonnegative
    /// intersections between distinct prime divisors.
    pub fn new(classes: Vec<String>, q: Vec<Vec<Rational>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        let mut seen = BTreeSet::new();
        if let Some(dup) = classes.iter().find(|c| !seen.insert(c.as_str())) {
            return bad(format!("duplicate class id {dup:?}"));
        }
        if q.len() != classes.len() || q.iter().any(|row| row.len() != classes.len()) {
            return bad(format!("intersection matrix must be {0}x{0}", classes.len()));
        }
        for i in 0..q.len() {
            for j in 0..i {
                if q[i][j] != q[j][i] {
                    return bad(format!("q is not symmetric at ({i}, {j})"));
                }
                if q[i][j].is_negative() {
                    return bad(format!(
                        "{}·{} = {} is negative for distinct prime divisors",
                        classes[i], classes[j], q[i][j]
                    ));
                }
            }
        }
        Ok(SurfaceModel { classes, q })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        SurfaceModel::new(raw.classes, raw.q)
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn q(&self) -> &[Vec<Rational>] {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == id)
    }

    /// Same model with classes reordered by `perm` (new position i holds old
    /// class `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let classes = perm.iter().map(|&i| self.classes[i].clone()).collect();
        let q = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.q[i][j].clone()).collect())
            .collect();
        SurfaceModel::new(classes, q)
    }
}

/// `Σ coeffs[c]·D_c` plus an ambient part with `ambient[i]` its
/// intersection with `D_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorExpr {
    #[serde(default)]
    pub coeffs: BTreeMap<String, Rational>,
    #[serde(default)]
    pub ambient: Vec<Rational>,
}

impl DivisorExpr {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn coeff(&self, id: &str) -> Rational {
        self.coeffs.get(id).cloned().unwrap_or_else(Rational::zero)
    }

    fn check(&self, model: &SurfaceModel) -> Result<()> {
        if let Some(id) = self.coeffs.keys().find(|k| model.index_of(k).is_none()) {
            return Err(Error::InvalidModel(format!("divisor uses unknown class {id:?}")));
        }
        if !self.ambient.is_empty() && self.ambient.len() != model.dim() {
            return Err(Error::Dimension {
                expected: model.dim(),
                found: self.ambient.len(),
            });
        }
        Ok(())
    }

    fn ambient_at(&self, i: usize) -> Rational {
        self.ambient.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Intersection numbers with every class of the model.
    pub fn intersections(&self, model: &SurfaceModel) -> Result<Vec<Rational>> {
        self.check(model)?;
        Ok((0..model.dim())
            .map(|i| {
                let mut total = self.ambient_at(i);
                for (id, a) in &self.coeffs {
                    total += a * &model.q[model.index_of(id).unwrap()][i];
                }
                total
            })
            .collect())
    }

    /// Same ambient part, class coefficients reduced by `f`.
    fn minus(&self, f: &BTreeMap<String, Rational>) -> DivisorExpr {
        let mut out = self.clone();
        for (id, a) in f {
            let entry = out.coeffs.entry(id.clone()).or_insert_with(Rational::zero);
            *entry -= a;
        }
        out.coeffs.retain(|_, a| !a.is_zero());
        out
    }

    fn same_ambient(&self, other: &DivisorExpr, dim: usize) -> bool {
        (0..dim).all(|i| self.ambient_at(i) == other.ambient_at(i))
    }
}

/// `D = M + F` with `F = Σ f_i D_i`, `f_i > 0` exactly on `support`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZariskiResult {
    pub mobile: DivisorExpr,
    pub fixed: BTreeMap<String, Rational>,
    pub support: BTreeSet<String>,
}

fn check_symmetric(q: &[Vec<Rational>]) -> Result<()> {
    let n = q.len();
    if q.iter().any(|row| row.len() != n) {
        return Err(Error::domain("matrix is not square"));
    }
    for (i, row) in q.iter().enumerate() {
        for (j, x) in row.iter().enumerate().take(i) {
            if *x != q[j][i] {
                return Err(Error::domain(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Rows scaled to integers; each row keeps its solution set and the sign of
/// every leading minor is unchanged when all rows share the scale.
fn integer_rows(rows: &[Vec<Rational>], common: bool) -> Vec<Vec<BigInt>> {
    let lcm_of = |row: &[Rational]| row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let shared = common.then(|| rows.iter().fold(BigInt::one(), |acc, r| acc.lcm(&lcm_of(r))));
    rows.iter()
        .map(|row| {
            let scale = shared.clone().unwrap_or_else(|| lcm_of(row));
            row.iter().map(|x| x.numer() * (&scale / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free elimination without pivoting. After step `k` the pivot
/// `m[k][k]` equals the `(k+1)`-th leading minor. Stops at the first zero
/// pivot and returns how many steps completed.
fn bareiss(m: &mut [Vec<BigInt>]) -> usize {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            return k;
        }
        for i in k + 1..n {
            for j in k + 1..m[i].len() {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    n
}

/// Sylvester's criterion on `-q`, exactly.
pub fn is_negative_definite(q: &[Vec<Rational>]) -> Result<bool> {
    check_symmetric(q)?;
    let neg: Vec<Vec<Rational>> = q.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let mut m = integer_rows(&neg, true);
    let n = m.len();
    // leading minors are the successive pivots
    let steps = bareiss(&mut m);
    Ok(steps == n && (0..n).all(|k| m[k][k].is_positive()))
}

/// Solves `a x = b` for a matrix whose leading minors are all nonzero.
fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain([rhs.clone()]).collect())
        .collect();
    let mut m = integer_rows(&rows, false);
    let steps = bareiss(&mut m);
    assert_eq!(steps, n, "singular system");
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from(m[i][i].clone());
    }
    x
}

fn restrict(model: &SurfaceModel, s: &[usize]) -> Vec<Vec<Rational>> {
    s.iter()
        .map(|&i| s.iter().map(|&j| model.q[i][j].clone()).collect())
        .collect()
}

/// `D·D_i >= 0` for every class.
pub fn check_nef(model: &SurfaceModel, d: &DivisorExpr) -> Result<bool> {
    Ok(d.intersections(model)?.iter().all(|x| !x.is_negative()))
}

/// Grows the fixed support from the classes `D` meets negatively, solving
/// `(D - F)·D_i = 0` on the support each round, until `D - F` is nef.
pub fn zariski_decompose(model: &SurfaceModel, d: &DivisorExpr) -> Result<ZariskiResult> {
    let dd = d.intersections(model)?;
    let mut order: Vec<usize> = (0..model.dim()).collect();
    order.sort_by(|&a, &b| model.classes[a].cmp(&model.classes[b]));
    let mut support: Vec<usize> = order.iter().copied().filter(|&i| dd[i].is_negative()).collect();
    let mut fixed: BTreeMap<String, Rational> = BTreeMap::new();
    loop {
        if support.is_empty() {
            break;
        }
        let q_s = restrict(model, &support);
        if !is_negative_definite(&q_s)? {
            let ids: Vec<&str> = support.iter().map(|&i| model.classes[i].as_str()).collect();
            return Err(Error::NoDecomposition(format!(
                "intersection matrix on {ids:?} is not negative definite"
            )));
        }
        // Σ_j f_j D_j·D_i = D·D_i for i in the support
        let rhs: Vec<Rational> = support.iter().map(|&i| dd[i].clone()).collect();
        let f = solve(&q_s, &rhs);
        if let Some((k, x)) = f.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::NoDecomposition(format!(
                "fixed coefficient {x} of {} is not positive",
                model.classes[support[k]]
            )));
        }
        fixed = support
            .iter()
            .zip(f)
            .map(|(&i, x)| (model.classes[i].clone(), x))
            .collect();
        let m_int = d.minus(&fixed).intersections(model)?;
        let grow: Vec<usize> = order
            .iter()
            .copied()
            .filter(|i| !support.contains(i) && m_int[*i].is_negative())
            .collect();
        if grow.is_empty() {
            break;
        }
        support.extend(grow);
        support.sort_by(|&a, &b| model.classes[a].cmp(&model.classes[b]));
    }
    Ok(ZariskiResult {
        mobile: d.minus(&fixed),
        support: fixed.keys().cloned().collect(),
        fixed,
    })
}

/// Independent check of the four defining conditions of `D = M + F`.
pub fn satisfies_zariski_conditions(model: &SurfaceModel, d: &DivisorExpr, r: &ZariskiResult) -> Result<bool> {
    let sum_ok = model
        .classes
        .iter()
        .all(|id| r.mobile.coeff(id) + r.fixed.get(id).cloned().unwrap_or_else(Rational::zero) == d.coeff(id))
        && r.mobile.same_ambient(d, model.dim());
    let fixed_ok =
        r.fixed.values().all(Rational::is_positive) && r.fixed.keys().cloned().collect::<BTreeSet<_>>() == r.support;
    let m_int = r.mobile.intersections(model)?;
    let nef_ok = m_int.iter().all(|x| !x.is_negative());
    let idx: Vec<usize> = r
        .support
        .iter()
        .map(|id| {
            model
                .index_of(id)
                .ok_or_else(|| Error::InvalidModel(format!("unknown class {id:?}")))
        })
        .collect::<Result<_>>()?;
    let orth_ok = idx.iter().all(|&i| m_int[i].is_zero());
    let negdef_ok = is_negative_definite(&restrict(model, &idx))?;
    Ok(sum_ok && fixed_ok && nef_ok && orth_ok && negdef_ok)
}

/// For nef `L <= D` with the same ambient part, whether `L <= M`.
pub fn check_maximality(model: &SurfaceModel, d: &DivisorExpr, l: &DivisorExpr) -> Result<bool> {
    d.check(model)?;
    l.check(model)?;
    if !l.same_ambient(d, model.dim()) {
        return Err(Error::Precondition("L and D must share the ambient part".into()));
    }
    if let Some(id) = model.classes.iter().find(|id| l.coeff(id) > d.coeff(id)) {
        return Err(Error::Precondition(format!("L exceeds D along {id}")));
    }
    if !check_nef(model, l)? {
        return Err(Error::Precondition("L is not nef".into()));
    }
    let m = zariski_decompose(model, d)?.mobile;
    Ok(model.classes.iter().all(|id| l.coeff(id) <= m.coeff(id)))
}
