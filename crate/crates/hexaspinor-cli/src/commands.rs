use std::path::Path;
use std::time::Instant;

use hexaspinor::bivgeo::{self, canonical_form, extract_null_pair, FlagBasis};
use hexaspinor::cover::{self, lift};
use hexaspinor::curvature::{self, decompose, random_alg_curvature, tensor_to_spintensor, weyl_residuals, AlgCurvature6};
use hexaspinor::norden::{self, Bivector4, NordenSet, Spinor};
use hexaspinor::octo::{self, build_eta8, build_octonion_table, default_octonion_vector, EtaSet8, Vec8};
use hexaspinor::realforms::{self, build_real_form};
use hexaspinor::tensors::{ComplexTensor, Mat4, Mat6};
use hexaspinor::Check;
use serde_json::{json, Value};

use crate::json::{self as js, field, parse_matrix, parse_tensor, parse_vector, to_line};
use crate::report::Report;
use crate::{Cli, CliError, Command, Global, Output, QuadricOp, Suite, TableSet};

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Tables { set } => tables(g, *set),
        Command::Verify { suite } => verify(g, *suite),
        Command::Push => push(g),
        Command::Lift => lift_cmd(g),
        Command::Canon => canon(g),
        Command::Nullpair => nullpair(g),
        Command::Flag { theta, scale } => flag(g, *theta, *scale),
        Command::Quadric { op } => quadric(g, op),
        Command::Octonion { table, mul } => octonion(g, *table, mul.as_deref()),
        Command::Curvature { terms } => curvature_cmd(g, *terms),
    }
}

fn ok(v: Value) -> Output {
    Output {
        text: to_line(&v) + "\n",
        pass: true,
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn input(g: &Global) -> Result<Value, CliError> {
    let path = g.input.as_deref().ok_or_else(|| CliError::Input("--in is required".into()))?;
    read_json(path)
}

fn real_form(g: &Global, default: (usize, usize)) -> Result<realforms::RealFormData, CliError> {
    let (p, q) = g.sig.unwrap_or(default);
    build_real_form(p, q).map_err(CliError::input)
}

fn tables(g: &Global, set: TableSet) -> Result<Output, CliError> {
    let v = match set {
        TableSet::Norden6 => {
            let n = NordenSet::special();
            json!({
                "set": "norden6",
                "eta_up": js::tensor(&stack(n.eta_up())),
                "eta_down": js::tensor(&stack(n.eta_down())),
                "metric": js::matrix(n.metric()),
            })
        }
        TableSet::Eta8 => {
            let e8 = build_eta8();
            json!({
                "set": "eta8",
                "eta": js::tensor(&stack(e8.eta())),
                "metric": js::matrix(e8.metric()),
                "eps": js::matrix(e8.eps()),
                "involution": js::matrix(e8.involution()),
                "s_tilde": js::matrix(e8.s_tilde()),
            })
        }
        TableSet::Realform => {
            let rf = real_form(g, (2, 4))?;
            let (p, q) = rf.signature();
            json!({
                "set": "realform",
                "signature": [p, q],
                "h": js::matrix(rf.h()),
                "involution": js::matrix(rf.involution()),
                "s": js::matrix(rf.s()),
                "s_kind": format!("{:?}", rf.s_kind()).to_lowercase(),
                "branch_sign": rf.branch_sign(),
            })
        }
        TableSet::Octonion => octonion_table_json(&build_eta8(), g.tol)?,
    };
    Ok(ok(v))
}

fn stack<const N: usize, const K: usize>(ms: &[nalgebra::SMatrix<hexaspinor::C64, N, N>; K]) -> ComplexTensor {
    ComplexTensor::from_fn(&[K, N, N], |i| ms[i[0]][(i[1], i[2])])
}

fn suite_checks(g: &Global, suite: Suite) -> (&'static str, Vec<Check>) {
    let n = NordenSet::special();
    let (seed, tol) = (g.seed, g.tol);
    match suite {
        Suite::Norden => ("norden", norden::identity_suite(&n, seed, tol)),
        Suite::Cover => ("cover", cover::cover_suite(&n, seed, tol)),
        Suite::Realform => ("realform", realforms::realform_suite(seed, tol)),
        Suite::Curvature => ("curvature", curvature::curvature_suite(&n, seed, 20, 3, tol)),
        Suite::Bivgeo => ("bivgeo", bivgeo::bivgeo_suite(seed, 200, tol)),
        Suite::Octo => ("octo", octo::octo_suite(seed, tol)),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn verify(g: &Global, suite: Suite) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut pass = true;
    let start = Instant::now();
    let names: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Norden, Suite::Cover, Suite::Realform, Suite::Curvature, Suite::Bivgeo, Suite::Octo],
        s => vec![s],
    };
    for s in names {
        let t0 = Instant::now();
        let (name, checks) = suite_checks(g, s);
        let r = Report {
            suite: name.to_string(),
            checks,
            duration: t0.elapsed(),
        };
        pass &= r.pass();
        text.push_str(&r.render(g.timing));
    }
    if suite == Suite::All {
        let mut v = json!({"suite": "all", "pass": pass});
        if g.timing {
            v["duration_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        text.push_str(&to_line(&v));
        text.push('\n');
    }
    Ok(Output { text, pass })
}

fn push(g: &Global) -> Result<Output, CliError> {
    let s: Mat4 = parse_matrix(&input(g)?)?;
    let n = NordenSet::special();
    let k = cover::push(&n, &s, g.tol).map_err(CliError::input)?;
    Ok(ok(json!({
        "k": js::matrix(&k),
        "orthogonality_residual": cover::orthogonality_residual(&n, &k),
    })))
}

fn lift_cmd(g: &Global) -> Result<Output, CliError> {
    let k: Mat6 = parse_matrix(&input(g)?)?;
    let n = NordenSet::special();
    let s = lift(&n, &k, g.tol.max(1e-8)).map_err(CliError::input)?;
    let back = cover::push_unchecked(&n, &s);
    Ok(ok(json!({
        "s": js::matrix(&s),
        "round_trip_residual": hexaspinor::tensors::mat_max_abs(&(back - k)),
    })))
}

fn canon(g: &Global) -> Result<Output, CliError> {
    let r: Mat4 = parse_matrix(&input(g)?)?;
    let rf = real_form(g, (6, 0))?;
    let cf = canonical_form(&rf, &r, g.tol.max(1e-9)).map_err(CliError::input)?;
    Ok(ok(json!({
        "eigenvalues": cf.eigenvalues.iter().map(|z| js::complex(*z)).collect::<Vec<_>>(),
        "invariants": cf.invariants.iter().map(|z| js::complex(*z)).collect::<Vec<_>>(),
        "u": js::matrix(&cf.u),
    })))
}

fn nullpair(g: &Global) -> Result<Output, CliError> {
    let p: Mat4 = parse_matrix(&input(g)?)?;
    let np = extract_null_pair(&p, g.tol.max(1e-9)).map_err(CliError::input)?;
    Ok(ok(json!({
        "x": js::vector(&np.x),
        "y": js::vector(&np.y),
        "reconstruction_residual": hexaspinor::tensors::mat_max_abs(&(np.outer() - p)),
    })))
}

fn flag(g: &Global, theta: f64, scale: f64) -> Result<Output, CliError> {
    if scale.is_nan() || scale <= 0.0 || !theta.is_finite() {
        return Err(CliError::Input("--scale must be positive and --theta finite".into()));
    }
    let rf = real_form(g, (2, 4))?;
    let f = bivgeo::build_flag(&rf, &FlagBasis::standard().rotate(theta).scale(scale), g.tol).map_err(CliError::input)?;
    let residuals: serde_json::Map<String, Value> = f.residuals().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let max = f.max_residual();
    let v = json!({
        "k": js::vector(&f.k),
        "n": js::vector(&f.n),
        "l": js::vector(&f.l),
        "m": js::vector(&f.m),
        "extension": f.extension,
        "extension_type": format!("{:?}", f.extension_type).to_lowercase(),
        "residuals": residuals,
        "pass": max <= g.tol,
    });
    Ok(Output {
        text: to_line(&v) + "\n",
        pass: max <= g.tol,
    })
}

fn spinor_pair(v: &Value) -> Result<(Spinor, Spinor), CliError> {
    Ok((parse_vector(field(v, "x")?)?, parse_vector(field(v, "y")?)?))
}

fn quadric(g: &Global, op: &QuadricOp) -> Result<Output, CliError> {
    let v = input(g)?;
    let out = match op {
        QuadricOp::Point2gen => {
            let (x, y) = spinor_pair(&v)?;
            let pg = octo::solve_point_to_generator(&x, &y, g.tol).map_err(CliError::input)?;
            json!({
                "particular": js::matrix(pg.particular.matrix()),
                "homogeneous": pg.homogeneous.iter().map(|h| js::matrix(h.matrix())).collect::<Vec<_>>(),
                "rank": pg.rank,
                "residual": pg.residual,
            })
        }
        QuadricOp::Gen2point => {
            let list = field(&v, "pairs")?.as_array().ok_or_else(|| CliError::Input("\"pairs\" must be a list".into()))?;
            let pairs = list.iter().map(spinor_pair).collect::<Result<Vec<_>, _>>()?;
            let pairs: [(Spinor, Spinor); 4] =
                pairs.try_into().map_err(|p: Vec<_>| CliError::Input(format!("expected 4 pairs, got {}", p.len())))?;
            let sol = octo::solve_generator_to_point(&pairs, g.tol.max(1e-9)).map_err(CliError::input)?;
            json!({"r": js::matrix(sol.r.matrix()), "rank": sol.rank, "residual": sol.residual})
        }
        QuadricOp::Family => {
            let list = field(&v, "vectors")?.as_array().ok_or_else(|| CliError::Input("\"vectors\" must be a list".into()))?;
            let xs = list.iter().map(parse_vector::<8>).collect::<Result<Vec<Vec8>, _>>()?;
            let xs: [Vec8; 4] = xs.try_into().map_err(|x: Vec<_>| CliError::Input(format!("expected 4 vectors, got {}", x.len())))?;
            let f = octo::family_test(&build_eta8(), &xs, g.tol.max(1e-9)).map_err(CliError::input)?;
            json!({"rho": f.rho, "ratio": js::complex(f.value), "residual": f.residual})
        }
        QuadricOp::Coords => {
            let r = Bivector4::new(parse_matrix(&v)?).map_err(CliError::input)?;
            let hc = octo::homogeneous_coords(&NordenSet::special(), &build_eta8(), &r);
            json!({
                "coords": js::vector(&hc.coords),
                "operator_coords": js::vector(&hc.operator_coords),
                "pair": js::matrix(&hc.pair),
                "nf": js::complex(hc.nf),
                "pfaffian_from_coords": js::complex(octo::pf_from_coords(&hc.coords)),
            })
        }
    };
    Ok(ok(out))
}

fn octonion_table_json(e8: &EtaSet8, tol: f64) -> Result<Value, CliError> {
    let t = build_octonion_table(e8, &default_octonion_vector(), tol.max(1e-12)).map_err(CliError::input)?;
    Ok(json!({
        "set": "octonion",
        "table": js::tensor(&t.to_tensor()),
        "unit": js::vector(&t.unit),
        "reading": [t.reading.first, t.reading.second, t.reading.third],
    }))
}

fn octonion(g: &Global, _table: bool, mul: Option<&[std::path::PathBuf]>) -> Result<Output, CliError> {
    let e8 = build_eta8();
    match mul {
        Some([a, b]) => {
            let x: Vec8 = parse_vector(&read_json(a)?)?;
            let y: Vec8 = parse_vector(&read_json(b)?)?;
            let t = build_octonion_table(&e8, &default_octonion_vector(), g.tol.max(1e-12)).map_err(CliError::input)?;
            Ok(ok(json!({"product": js::vector(&t.mul(&x, &y))})))
        }
        Some(_) => Err(CliError::Input("--mul takes two files".into())),
        None => Ok(ok(octonion_table_json(&e8, g.tol)?)),
    }
}

fn curvature_cmd(g: &Global, terms: usize) -> Result<Output, CliError> {
    let n = NordenSet::special();
    let r6 = match &g.input {
        Some(_) => AlgCurvature6::from_tensor(&parse_tensor(&input(g)?)?).map_err(CliError::input)?,
        None => random_alg_curvature(g.seed, terms).map_err(CliError::input)?,
    };
    let scale = 1.0 + r6.max_abs();
    let rs = tensor_to_spintensor(&n, &r6).map_err(CliError::input)?;
    let dec = decompose(&rs);
    let (trace, sym) = weyl_residuals(&dec.weyl);
    let checks = vec![
        Check::new("tensor_bianchi", r6.bianchi_residual() / scale, g.tol),
        Check::new("spinor_bianchi", curvature::bianchi_residual(&rs) / scale, g.tol),
        Check::new("p_trace", curvature::p_trace_residual(&dec) / scale, g.tol),
        Check::new("weyl_trace_free", trace / scale, g.tol),
        Check::new("weyl_symmetric", sym / scale, g.tol),
        Check::new("recomposition", curvature::recompose(&dec).max_abs_diff(&rs) / scale, g.tol),
    ];
    let mut v = json!({
        "scalar": js::complex(dec.scalar),
        "ricci": js::matrix(&r6.ricci(&n)),
        "weyl": js::tensor(&dec.weyl.to_tensor()),
    });
    if let Some((p, q)) = g.sig {
        let rf = build_real_form(p, q).map_err(CliError::input)?;
        v["real"] = json!(curvature::is_real_curvature(&rf, &rs, g.tol * scale));
    }
    let r = Report {
        suite: "curvature".into(),
        checks,
        duration: Default::default(),
    };
    let pass = r.pass();
    let mut text = r.render(false);
    text.push_str(&to_line(&v));
    text.push('\n');
    Ok(Output { text, pass })
}
