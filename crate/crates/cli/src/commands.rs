//! One function per subcommand, each returning the `result` object of the
//! report.

use framekit::analysis::{canonical_dual, frame_bounds, verify_frame_inequality, FrameBounds};
use framekit::convergence::{
    bessel_growth, curve_json, default_cuts, example31_partial_sum, harmonic,
    partial_sum_trajectory, rearrangement_search, ConvergenceDiagnostic, RearrangementResult,
    SearchConfig, Series,
};
use framekit::duality::{
    certify_dual, conditional_shift, dual_is_frame, is_realizable, nonframe_dual_for_zero_padded,
    realize_dual, synthesize, DualCertificate,
};
use framekit::family::{example31_dim, materialize, save};
use framekit::linalg::inner_product;
use framekit::structure::{
    dual_excess_audit, excess, extended_moment_membership, moment_membership, moment_space,
    moment_space_equal, ExcessReport,
};
use framekit::{FamilyOrigin, FrameFamily, GallerySpec, Vector};
use serde_json::{json, Map, Value};

use crate::report::vector_json;
use crate::source::{
    default_truncation, parse_complex_list, parse_cuts, parse_gallery, parse_vector, resolve,
    Source,
};
use crate::{CliError, Command, FamilyArgs, RunConfig};

type Outcome = Result<Value, CliError>;

pub fn dispatch(config: &RunConfig) -> Outcome {
    let seed = config.seed;
    let tol = &config.tol;
    match &config.command {
        Command::Analyze { family, trials } => {
            let (src, f) = load_family(family, seed)?;
            let b = frame_bounds(&f, tol)?;
            let ex = excess(&f, tol)?;
            let ineq = verify_frame_inequality(&f, *trials, seed, tol)?;
            let mut out = bounds_json(&b);
            merge(&mut out, excess_json(&ex));
            out.insert("family".into(), family_json(&src, &f));
            out.insert(
                "inequality".into(),
                json!({
                    "trials": ineq.trials,
                    "min_observed": ineq.min_observed,
                    "max_observed": ineq.max_observed,
                    "violations": ineq.violations,
                    "holds": ineq.holds(),
                }),
            );
            Ok(Value::Object(out))
        }

        Command::DualCheck {
            family,
            dual,
            zero_pad_w,
        } => {
            let (src, f) = load_family(family, seed)?;
            let (dual_desc, mut y) = match dual.source() {
                Some(s) => (s.describe(), resolve(&s, family.k, seed)?),
                None => ("canonical".to_string(), canonical_dual(&f, tol)?),
            };
            let mut replaced = Value::Null;
            if let Some(w) = zero_pad_w {
                let w = parse_vector(w)?;
                y = nonframe_dual_for_zero_padded(&f, &y, &w, tol)?;
                replaced = vector_json(&w);
            }
            let cert = certify_dual(&f, &y, tol)?;
            Ok(json!({
                "family": family_json(&src, &f),
                "dual": dual_desc,
                "zero_pad_w": replaced,
                "certificate": certificate_json(&cert),
                "dual_is_frame": dual_is_frame(&y, tol)?,
                "moment_space_equal": moment_space_equal(&f, &y, tol)?,
            }))
        }

        Command::Realize {
            family,
            coeffs,
            shift,
        } => {
            let (src, f) = load_family(family, seed)?;
            let given = parse_complex_list(coeffs)?;
            let c = if *shift {
                conditional_shift(&f, &given)?
            } else {
                given
            };
            let realizable = is_realizable(&f, &c, tol)?;
            let x0 = synthesize(&f, &c)?;
            let y = realize_dual(&f, &c, tol)?;
            let cert = certify_dual(&f, &y, tol)?;
            let mut worst: f64 = 0.0;
            for (cn, yn) in c.iter().zip(y.vectors()) {
                worst = worst.max((inner_product(&x0, yn)? - cn).norm());
            }
            Ok(json!({
                "family": family_json(&src, &f),
                "coefficients": complex_list_json(&c),
                "shifted": shift,
                "realizable": realizable,
                "resultant": vector_json(&x0),
                "resultant_norm": x0.norm(),
                "dual": vectors_json(&y),
                "reproduction_error": worst,
                "certificate": certificate_json(&cert),
            }))
        }

        Command::Converge {
            family,
            dual,
            coeffs,
            limit,
            probe,
            cuts,
            budget,
        } => {
            let (src, f) = load_family(family, seed)?;
            let (series, limit, kind) = match (coeffs, probe) {
                (Some(c), _) => {
                    let c = parse_complex_list(c)?;
                    let series = Series::from_coefficients(&f, &c)?;
                    let limit = match limit {
                        Some(l) => parse_vector(l)?,
                        None => series.partial_sum(series.len())?,
                    };
                    (series, limit, "coefficients")
                }
                (None, Some(p)) => {
                    let p = parse_vector(p)?;
                    let y = match dual.source() {
                        Some(s) => resolve(&s, family.k, seed)?,
                        None => canonical_dual(&f, tol)?,
                    };
                    (
                        Series::analysis_expansion(&f, &y, &p)?,
                        p,
                        "analysis_expansion",
                    )
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "converge needs --coeffs or --probe".to_string(),
                    ))
                }
            };
            let cuts = match cuts {
                Some(text) => parse_cuts(text)?,
                None => default_cuts(series.len()),
            };
            let search = SearchConfig {
                budget: *budget,
                seed,
            };
            let diag = partial_sum_trajectory(&series, &limit, &cuts, &search, tol)?;
            let rearr = rearrangement_search(&series, &limit, &search)?;
            Ok(json!({
                "family": family_json(&src, &f),
                "series": kind,
                "limit": vector_json(&limit),
                "budget": budget,
                "diagnostic": diagnostic_json(&diag),
                "rearrangement": rearrangement_json(&rearr),
            }))
        }

        Command::Excess { family } => {
            let (src, f) = load_family(family, seed)?;
            let mut out = excess_json(&excess(&f, tol)?);
            out.insert("family".into(), family_json(&src, &f));
            Ok(Value::Object(out))
        }

        Command::Moment { family, coeffs } => {
            let (src, f) = load_family(family, seed)?;
            let ms = moment_space(&f, tol)?;
            let mut out = Map::new();
            out.insert("family".into(), family_json(&src, &f));
            out.insert("dim".into(), json!(ms.dim()));
            out.insert("codim".into(), json!(ms.codim));
            out.insert(
                "basis".into(),
                Value::Array(ms.basis.iter().map(vector_json).collect()),
            );
            let mut membership = Value::Null;
            if let Some(text) = coeffs {
                let c = parse_complex_list(text)?;
                let m = moment_membership(&ms, &c, tol)?;
                membership = json!({
                    "coefficients": complex_list_json(&c),
                    "in_moment_space": m.in_space,
                    "residual": m.residual,
                    "projection_norm": m.projection_norm,
                    "in_extended_moment_space": extended_moment_membership(&f, &c, tol)?,
                });
            }
            out.insert("membership".into(), membership);
            Ok(Value::Object(out))
        }

        Command::Gallery {
            spec,
            k,
            save: path,
        } => {
            let parsed = parse_gallery(spec, seed)?;
            let k = k.unwrap_or_else(|| default_truncation(&parsed));
            let f = materialize(parsed, k)?;
            if let Some(p) = path {
                save(&f, p)?;
            }
            let b = frame_bounds(&f, tol)?;
            let mut out = bounds_json(&b);
            out.insert(
                "family".into(),
                family_json(&Source::Gallery(spec.clone()), &f),
            );
            out.insert(
                "norms".into(),
                Value::Array(f.vectors().iter().map(|v| json!(v.norm())).collect()),
            );
            out.insert(
                "saved".into(),
                path.as_ref()
                    .map_or(Value::Null, |p| json!(p.display().to_string())),
            );
            Ok(Value::Object(out))
        }

        Command::ReproduceExample31 { k, budget } => reproduce_example31(config, *k, *budget),
    }
}

fn load_family(args: &FamilyArgs, seed: u64) -> Result<(Source, FrameFamily), CliError> {
    let src = args.source();
    let f = resolve(&src, args.k, seed)?;
    Ok((src, f))
}

fn merge(into: &mut Map<String, Value>, from: Map<String, Value>) {
    into.extend(from);
}

fn family_json(src: &Source, f: &FrameFamily) -> Value {
    let generator = match f.origin() {
        FamilyOrigin::Explicit => Value::Null,
        FamilyOrigin::Generated { spec, truncation } => {
            let params: Map<String, Value> = spec
                .params()
                .into_iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            json!({ "name": spec.name(), "params": params, "K": truncation })
        }
    };
    json!({
        "source": src.describe(),
        "dim": f.ambient_dim(),
        "count": f.count(),
        "generator": generator,
    })
}

fn vectors_json(f: &FrameFamily) -> Value {
    Value::Array(f.vectors().iter().map(vector_json).collect())
}

fn complex_list_json(c: &[framekit::Scalar]) -> Value {
    Value::Array(c.iter().map(|z| json!([z.re, z.im])).collect())
}

fn bounds_json(b: &FrameBounds) -> Map<String, Value> {
    let v = json!({
        "A": b.lower,
        "B": b.upper,
        "rank": b.rank,
        "is_bessel": b.is_bessel,
        "is_frame": b.is_frame,
    });
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn excess_json(r: &ExcessReport) -> Map<String, Value> {
    let growth = match &r.growth {
        None => Value::Null,
        Some(g) => json!({
            "points": g.points.iter().map(|(k, e)| json!({"K": k, "excess": e})).collect::<Vec<_>>(),
            "linear_growth": g.linear_growth,
        }),
    };
    let v = json!({
        "count": r.count,
        "rank": r.rank,
        "excess": r.excess,
        "removable_set": r.removable_set,
        "kept_lower_bound": r.kept_lower_bound,
        "is_near_riesz": r.is_near_riesz,
        "is_riesz": r.is_riesz,
        "is_minimal": r.is_minimal,
        "excess_growth": growth,
    });
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn certificate_json(c: &DualCertificate) -> Value {
    json!({
        "alt_dual_residual": c.alt_dual_residual,
        "syn_dual_residual": c.syn_dual_residual,
        "is_alternative_dual": c.is_alternative_dual,
        "is_synthesis_pseudo_dual": c.is_synthesis_pseudo_dual,
        "dual_is_bessel": c.dual_is_bessel,
        "dual_bessel_bound": c.dual_bessel_bound,
        "truncation_allowance": c.truncation_allowance,
    })
}

fn diagnostic_json(d: &ConvergenceDiagnostic) -> Value {
    json!({
        "partial_sums": d.partial_sums.iter().map(|p| json!({
            "K": p.cut,
            "deviation": p.deviation,
        })).collect::<Vec<_>>(),
        "identity_deviation": curve_json(&d.identity_deviation, "deviation"),
        "rearranged_deviation": curve_json(&d.rearranged_deviation, "deviation"),
        "coeff_growth": curve_json(&d.coeff_growth, "value"),
        "verdict": d.verdict.name(),
    })
}

fn rearrangement_json(r: &RearrangementResult) -> Value {
    json!({
        "max_deviation": r.max_deviation,
        "witness_prefix": r.witness_prefix,
        "witness": r.witness,
        "identity_residual": r.identity_residual,
    })
}

fn reproduce_example31(config: &RunConfig, k: usize, budget: usize) -> Outcome {
    let tol = &config.tol;
    let x = materialize(GallerySpec::Example31Frame, k)?;
    let y = materialize(GallerySpec::Example31Dual, k)?;
    let dim = x.ambient_dim();
    let e1 = Vector::basis(dim, 0);
    let cert = certify_dual(&x, &y, tol)?;
    let series = Series::analysis_expansion(&x, &y, &e1)?;

    // Partial sums at each default cut and its even or odd neighbour,
    // against the closed form.
    let mut cuts: Vec<usize> = default_cuts(k)
        .into_iter()
        .flat_map(|c| [c - 1, c])
        .filter(|&c| c >= 4)
        .collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut closed = Vec::with_capacity(cuts.len());
    for &c in &cuts {
        let sum = series.partial_sum(c)?;
        let local = Vector::basis(example31_dim(c), 0);
        let expected = example31_partial_sum(&local, c)?.padded(dim)?;
        closed.push(json!({
            "K": c,
            "parity": if c % 2 == 1 { "odd" } else { "even" },
            "deviation": sum.sub(&e1)?.norm(),
            "closed_form_error": sum.sub(&expected)?.norm(),
        }));
    }

    // `Σ_{n ≤ 2m+1} |⟨e_1, y_n⟩|²` against `1 + 2 H_m`.
    let mut ms: Vec<usize> = [10, 25, 50, 100, 250, 500, 1000]
        .into_iter()
        .filter(|&m| 2 * m < k)
        .collect();
    if k % 2 == 1 && !ms.contains(&((k - 1) / 2)) {
        ms.push((k - 1) / 2);
    }
    let growth_cuts: Vec<usize> = ms.iter().map(|m| 2 * m + 1).collect();
    let growth = bessel_growth(&y, &e1, &growth_cuts)?;
    let growth_json: Vec<Value> = growth
        .iter()
        .zip(&ms)
        .map(|(p, &m)| {
            json!({
                "K": p.cut,
                "value": p.value,
                "reference": 1.0 + 2.0 * harmonic(m),
                "log_floor": 2.0 * (m as f64).ln(),
            })
        })
        .collect();
    let growth_at_k = bessel_growth(&y, &e1, &[k])?[0].value;

    let search = SearchConfig {
        budget,
        seed: config.seed,
    };
    let diag = partial_sum_trajectory(&series, &e1, &default_cuts(k), &search, tol)?;
    let rearr = rearrangement_search(&series, &e1, &search)?;
    let audit = dual_excess_audit(&x, std::slice::from_ref(&y), tol)?;

    Ok(json!({
        "K": k,
        "dim": dim,
        "certificate": certificate_json(&cert),
        "closed_form": closed,
        "coefficient_growth": growth_json,
        "coefficient_growth_at_K": growth_at_k,
        "trajectory": diagnostic_json(&diag),
        "rearrangement": rearrangement_json(&rearr),
        "verdict": diag.verdict.name(),
        "excess_audit": {
            "frame": Value::Object(excess_json(&audit.frame)),
            "dual": Value::Object(excess_json(&audit.duals[0])),
            "consistent": audit.consistent,
        },
    }))
}
