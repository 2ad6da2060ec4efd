use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use super::args::{Command, CurveCommand, GammaQuery, Problem, Restrictions};
use super::{batch, EXIT_NOT_FOUND, EXIT_OK};
use crate::curves::{self, BoundaryPoint, CurvePair};
use crate::diophantine::{
    self, CoverConstruction, CoveringProblem, CoveringVerdict, RestrictionData, RestrictionWitness,
};
use crate::elliptic::{self, KodairaType};
use crate::error::{Error, Result};
use crate::hyperstandard::{self, GammaSpec, RSet};
use crate::rational::{floor_rational, Rational};
use crate::rounding::{self, BoundaryCoefficient};
use crate::surfaces::{self, DivisorExpr, SurfaceModel};
use crate::vector::{linf_norm, RationalVector};

type Reply = Result<(i32, Value)>;

fn ok(v: Value) -> Reply {
    Ok((EXIT_OK, v))
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn coefficient(a: &Rational) -> Result<BoundaryCoefficient> {
    BoundaryCoefficient::new(a.clone())
}

fn restriction_data(r: Restrictions) -> Result<RestrictionData> {
    RestrictionData::new(
        r.divisor,
        RationalVector::new(r.v)?,
        RationalVector::new(r.e)?,
        r.epsilon,
    )
}

fn covering_problem(p: Problem) -> Result<CoveringProblem> {
    CoveringProblem::new(restriction_data(p.restrictions)?, p.d, p.capacities)
}

fn witness_json(w: &RestrictionWitness) -> Value {
    json!({ "n": w.n, "v_n": to_json(&w.v_n) })
}

fn curve(path: &Path) -> Result<CurvePair> {
    CurvePair::from_json(&read_file(path)?)
}

fn model(path: &Path) -> Result<SurfaceModel> {
    SurfaceModel::from_json(&read_file(path)?)
}

fn divisor(path: &Path) -> Result<DivisorExpr> {
    DivisorExpr::from_json(&read_file(path)?)
}

#[derive(Deserialize)]
struct MatrixFile {
    q: Vec<Vec<Rational>>,
}

pub(crate) fn dispatch(cmd: Command) -> Reply {
    match cmd {
        Command::Round { a, n } => ok(json!({ "result": rounding::round_coeff(&coefficient(&a)?, n)? })),
        Command::RoundVector { b, n } => {
            let coeffs = b.iter().map(coefficient).collect::<Result<Vec<_>>>()?;
            ok(json!({ "result": rounding::round_vector(&coeffs, n)? }))
        }
        Command::ComplementOk { d, d_plus, n } => {
            ok(json!({ "ok": rounding::complement_coeff_ok(&coefficient(&d)?, &d_plus, n)? }))
        }
        Command::Gamma { rset, nset, query } => gamma(GammaSpec::new(RSet::new(rset)?, nset)?, query),
        Command::FindN { restrictions, n_max } => {
            let data = restriction_data(restrictions)?;
            match diophantine::find_complementary_n(&data, n_max)? {
                Some(w) => ok(witness_json(&w)),
                None => Err(Error::NotFound(format!("no n <= {n_max} is under the restrictions"))),
            }
        }
        Command::CheckRestriction { restrictions, n, v_n } => {
            let data = restriction_data(restrictions)?;
            let w = RestrictionWitness {
                n,
                v_n: RationalVector::new(v_n)?,
            };
            ok(json!({ "ok": diophantine::check_restriction(&w, &data)? }))
        }
        Command::Delta { e_prime, l, epsilon } => {
            let delta = diophantine::continuity_delta(&RationalVector::new(e_prime)?, l, &epsilon)?;
            ok(json!({ "delta": delta }))
        }
        Command::Simultaneous {
            problem,
            boundaries,
            n_max,
        } => {
            let p = covering_problem(problem)?;
            match diophantine::find_simultaneous_n(&p, &boundaries, n_max)? {
                Some(w) => ok(witness_json(&w)),
                None => Err(Error::NotFound(format!("no n <= {n_max} rounds within capacity"))),
            }
        }
        Command::Cover {
            problem,
            denom_bound,
            n_max,
        } => {
            let p = covering_problem(problem)?;
            let r = diophantine::construct_covering_set(&p, denom_bound, n_max)?;
            let code = match r {
                CoverConstruction::Covered { .. } => EXIT_OK,
                CoverConstruction::Uncoverable { .. } => EXIT_NOT_FOUND,
            };
            Ok((code, json!({ "denom_bound": denom_bound, "construction": to_json(&r) })))
        }
        Command::VerifyCover {
            problem,
            denom_bound,
            n_set,
        } => {
            let p = covering_problem(problem)?;
            let set: BTreeSet<u64> = n_set.into_iter().collect();
            let v = diophantine::verify_covering(&set, &p, denom_bound)?;
            let code = if v == CoveringVerdict::Ok {
                EXIT_OK
            } else {
                EXIT_NOT_FOUND
            };
            Ok((code, json!({ "denom_bound": denom_bound, "result": to_json(&v) })))
        }
        Command::Curve(c) => curve_command(c),
        Command::Merge { b, threshold } => ok(json!({ "result": curves::merge_small_multiplicities(&b, &threshold)? })),
        Command::Zariski { model: m, divisor: d } => {
            let (m, d) = (model(&m)?, divisor(&d)?);
            let r = surfaces::zariski_decompose(&m, &d)?;
            let mut v = to_json(&r);
            v["mobile_intersections"] = to_json(&r.mobile.intersections(&m)?);
            ok(v)
        }
        Command::NefCheck { model: m, divisor: d } => {
            let (m, d) = (model(&m)?, divisor(&d)?);
            ok(json!({
                "nef": surfaces::check_nef(&m, &d)?,
                "intersections": d.intersections(&m)?,
            }))
        }
        Command::Negdef { matrix } => {
            let text = read_file(&matrix)?;
            let f: MatrixFile = serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
            ok(json!({ "negative_definite": surfaces::is_negative_definite(&f.q)? }))
        }
        Command::Maximality {
            model: m,
            divisor: d,
            l,
        } => {
            let (m, d, l) = (model(&m)?, divisor(&d)?, divisor(&l)?);
            ok(json!({ "holds": surfaces::check_maximality(&m, &d, &l)? }))
        }
        Command::Kodaira { fiber } => {
            let t: KodairaType = fiber.parse()?;
            ok(json!({
                "type": t.to_string(),
                "d_P": elliptic::divisorial_coeff(t),
                "index": elliptic::complement_index(t),
                "adjunction_index": elliptic::adjunction_index_elliptic(),
            }))
        }
        Command::Norm { v } => ok(json!({ "norm": linf_norm(&v)? })),
        Command::Floor { a } => ok(json!({ "floor": floor_rational(&a).to_string() })),
        Command::Batch { manifest } => batch::run_manifest(&manifest),
    }
}

fn gamma(spec: GammaSpec, q: GammaQuery) -> Reply {
    if let Some(b) = q.contains {
        return ok(json!({ "contains": hyperstandard::gamma_contains(&b, &spec)? }));
    }
    if let Some(b) = q.phi_contains {
        return ok(json!({ "contains": hyperstandard::phi_contains(&b, spec.r_set())? }));
    }
    if let Some(c) = q.enumerate_upto {
        return ok(json!({ "elements": hyperstandard::gamma_enumerate_upto(&c, &spec)? }));
    }
    if let Some(b) = q.low_approx {
        return ok(json!({ "result": hyperstandard::low_approx(&b, &spec)? }));
    }
    let b = q.low_approx_boundary.unwrap_or_default();
    ok(json!({ "result": hyperstandard::low_approx_boundary(&b, &spec)? }))
}

fn curve_command(c: CurveCommand) -> Reply {
    match c {
        CurveCommand::Classify { file } => ok(to_json(&curves::classify(&curve(&file)?))),
        CurveCommand::RComplement { file } => {
            let pair = curve(&file)?;
            ok(match curves::has_r_complement(&pair) {
                Some(r) => json!({
                    "exists": true,
                    "boundary": to_json(&r.boundary),
                    "supports_extended": r.supports_extended,
                }),
                None => json!({ "exists": false }),
            })
        }
        CurveCommand::Complement { file, candidates } => {
            let pair = curve(&file)?;
            let set: BTreeSet<u64> = candidates.into_iter().collect();
            ok(to_json(&curves::find_n_complement(&pair, &set)?))
        }
        CurveCommand::Check { file, plus, n } => {
            let pair = curve(&file)?;
            let text = read_file(&plus)?;
            let b_plus: Vec<BoundaryPoint> =
                serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
            ok(json!({ "is_n_complement": curves::is_n_complement(&pair, &b_plus, n) }))
        }
        CurveCommand::Validate { file } => {
            let pair = curve(&file)?;
            ok(json!({
                "valid": true,
                "components": pair.components().len(),
                "nodes": pair.nodes().len(),
                "boundary_points": pair.boundary().len(),
            }))
        }
        CurveCommand::Degrees { file } => {
            let pair = curve(&file)?;
            let rows: Vec<Value> = curves::component_degree_data(&pair)
                .iter()
                .map(|d| {
                    let mut v = to_json(d);
                    v["anticanonical_degree"] = json!(d.anticanonical_degree());
                    v
                })
                .collect();
            ok(json!({ "components": rows }))
        }
    }
}
