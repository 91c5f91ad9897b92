//! Verb dispatch: input resolution (built-in name, inline JSON, file path),
//! text rendering, and error-code mapping.

use crate::{Cli, CliError, Command, EllCmd, GenusCmd, IsometryCmd};
use nielsen_core::arrangement::{k3_arrangement_from_roots, Arrangement, ArrangementError};
use nielsen_core::genus;
use nielsen_core::graded::{Generator, GradedPolynomial, Monomial};
use nielsen_core::isometry::{reflection, Isometry, IsometryClass, IsometryError};
use nielsen_core::jsonio as js;
use nielsen_core::lattice::{IndexInAmbient, Lattice, LatticeError, SublatticeReport, Vector};
use nielsen_core::obstruction::{
    self, Certification, ObstructionError, ObstructionReport, StabilizerReport, StableRange,
    Verdict,
};
use nielsen_core::series::l_tilde_series;
use nielsen_core::tensor;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

pub struct CmdOutput {
    pub text: String,
    pub exit: i32,
}

impl CmdOutput {
    fn ok(text: String) -> Result<CmdOutput, CliError> {
        Ok(CmdOutput { text, exit: 0 })
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lattice_error_name(e: &LatticeError) -> &'static str {
    match e {
        LatticeError::NotSquare => "NotSquare",
        LatticeError::NonSymmetric(..) => "NonSymmetric",
        LatticeError::BoxRequired => "BoxRequired",
        LatticeError::EmptyInput => "EmptyInput",
        LatticeError::DimensionMismatch { .. } => "DimensionMismatch",
    }
}

fn isometry_error_name(e: &IsometryError) -> &'static str {
    match e {
        IsometryError::IsotropicVector => "IsotropicVector",
        IsometryError::NotIntegral => "NotIntegral",
        IsometryError::DegenerateForm => "DegenerateForm",
        IsometryError::LatticeMismatch => "LatticeMismatch",
        IsometryError::GramNotPreserved => "GramNotPreserved",
        IsometryError::NotUnimodular => "NotUnimodular",
        IsometryError::ShapeMismatch => "ShapeMismatch",
    }
}

fn arrangement_error_name(e: &ArrangementError) -> &'static str {
    match e {
        ArrangementError::EvenAmbient => "EvenAmbient",
        ArrangementError::ZeroAmbient => "ZeroAmbient",
        ArrangementError::BadNormals(_) => "BadNormals",
        ArrangementError::NormalsRankDeficient(_) => "NormalsRankDeficient",
        ArrangementError::DuplicateSubspace(..) => "DuplicateSubspace",
        ArrangementError::TransversalityFailure { .. } => "TransversalityFailure",
        ArrangementError::WindowExceeded { .. } => "WindowExceeded",
        ArrangementError::NotARoot(_) => "NotARoot",
        ArrangementError::ProportionalRoots(..) => "ProportionalRoots",
        ArrangementError::CoincidentSubspaces(..) => "CoincidentSubspaces",
        ArrangementError::AmbientNotK3 => "AmbientNotK3",
        ArrangementError::Lattice(inner) => lattice_error_name(inner),
    }
}

fn obstruction_error_name(e: &ObstructionError) -> &'static str {
    match e {
        ObstructionError::RankTooSmall => "RankTooSmall",
        ObstructionError::NotARoot(_) => "NotARoot",
        ObstructionError::DuplicateRoot(_) => "DuplicateRoot",
        ObstructionError::DegenerateForm => "DegenerateForm",
        ObstructionError::RegionTooLarge(_) => "RegionTooLarge",
        ObstructionError::Lattice(inner) => lattice_error_name(inner),
    }
}

fn domain<E: std::fmt::Display>(name: &str, e: E) -> CliError {
    CliError::Domain(format!("{name}: {e}"))
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        domain(lattice_error_name(&e), &e)
    }
}

impl From<IsometryError> for CliError {
    fn from(e: IsometryError) -> Self {
        domain(isometry_error_name(&e), &e)
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        domain(arrangement_error_name(&e), &e)
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        domain(obstruction_error_name(&e), &e)
    }
}

impl From<genus::GenusError> for CliError {
    fn from(e: genus::GenusError) -> Self {
        let name = match e {
            genus::GenusError::UnsupportedRank(_) => "UnsupportedRank",
            genus::GenusError::OddArity => "OddArity",
        };
        domain(name, &e)
    }
}

impl From<tensor::TensorError> for CliError {
    fn from(e: tensor::TensorError) -> Self {
        domain("ScaleExceeded", &e)
    }
}

impl From<js::JsonError> for CliError {
    fn from(e: js::JsonError) -> Self {
        match e {
            js::JsonError::Lattice(inner) => inner.into(),
            js::JsonError::Isometry(inner) => inner.into(),
            js::JsonError::Arrangement(inner) => inner.into(),
            other => usage(other.to_string()),
        }
    }
}

/// Built-in names first, then file contents, then the literal string.
fn resolve_input(spec: &str) -> Result<String, CliError> {
    if nielsen_core::lattice::by_name(spec).is_some() {
        return Ok(spec.to_string());
    }
    let path = std::path::Path::new(spec);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {spec}: {e}")));
    }
    Ok(spec.to_string())
}

fn parse_lattice(spec: &str) -> Result<Lattice, CliError> {
    let resolved = resolve_input(spec)?;
    Ok(js::lattice_from_spec(resolved.trim())?)
}

fn parse_json_value(spec: &str, what: &str) -> Result<Value, CliError> {
    let resolved = resolve_input(spec)?;
    serde_json::from_str(resolved.trim()).map_err(|e| usage(format!("invalid {what} JSON: {e}")))
}

fn parse_vectors(spec: &str) -> Result<Vec<Vector>, CliError> {
    let v = parse_json_value(spec, "vector list")?;
    Ok(js::vectors_from_json(&v)?)
}

/// Monomials like "l1^2*l2" or "1".
fn parse_ell_monomial(text: &str) -> Result<Monomial, CliError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut m = Monomial::one();
    for factor in text.split('*') {
        let factor = factor.trim();
        let rest = factor.strip_prefix('l').ok_or_else(|| {
            usage(format!(
                "bad ell-monomial factor {factor:?}: expected lI or lI^E"
            ))
        })?;
        let (idx_str, exp) = match rest.split_once('^') {
            Some((i, e)) => (
                i,
                e.parse::<u32>()
                    .map_err(|_| usage(format!("bad exponent in {factor:?}")))?,
            ),
            None => (rest, 1),
        };
        let idx: u32 = idx_str
            .parse()
            .map_err(|_| usage(format!("bad class index in {factor:?}")))?;
        if idx == 0 {
            return Err(usage("ell class indices start at 1"));
        }
        m = m.mul(&Monomial::power(Generator::Ell(idx), exp));
    }
    Ok(m)
}

fn parse_genera(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad genus {t:?}")))
        })
        .collect()
}

fn parse_tuple_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| usage(format!("tuple range must look like 1..4, got {text:?}")))?;
    let lo: u32 = lo.trim().parse().map_err(|_| usage("bad range start"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| usage("bad range end"))?;
    if lo == 0 || hi < lo {
        return Err(usage(
            "tuple range must be nonempty and start at 1 or above",
        ));
    }
    Ok(lo..=hi)
}

fn signature_text(l: &Lattice) -> String {
    l.signature().to_string()
}

fn lattice_summary_text(l: &Lattice) -> String {
    let sig = l.signature();
    let mut s = format!(
        "rank: {}\ndet: {}\neven: {}\nunimodular: {}\nsignature: {}",
        l.rank(),
        l.det(),
        l.is_even(),
        l.is_unimodular(),
        sig
    );
    if sig.is_degenerate() {
        s.push_str(&format!("\nrank_deficit: {}", sig.rank_deficit));
    }
    s
}

fn gram_lines(m: &[Vec<BigInt>]) -> String {
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn sublattice_text(r: &SublatticeReport) -> String {
    let basis = |vs: &[Vector]| {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "span_rank: {}\nspan_signature: {}\nspan_basis: {}\nspan_gram:\n{}\n\
         complement_rank: {}\ncomplement_signature: {}\ncomplement_basis: {}\n\
         index_in_ambient: {}",
        r.span_rank,
        r.span_signature,
        basis(&r.span_basis),
        gram_lines(&r.span_gram),
        r.complement_basis.len(),
        r.complement_signature,
        basis(&r.complement_basis),
        r.index_in_ambient
    )
}

fn class_text(c: &IsometryClass) -> String {
    format!(
        "det: {}\nspinor_norm: {}\nsubgroup: {}",
        c.determinant, c.spinor_norm, c.subgroup_tag
    )
}

fn isometry_text(g: &Isometry) -> Result<String, CliError> {
    let class = g.classify()?;
    Ok(format!(
        "matrix:\n{}\n{}",
        gram_lines(g.matrix()),
        class_text(&class)
    ))
}

fn stable_range_text(r: &StableRange) -> String {
    format!(
        "p: {}\nq: {}\nbijective_upto: {}\niso_upto_with_2q: {}",
        r.p, r.q, r.bijective_upto, r.iso_upto_with_2q
    )
}

fn stabilizer_text(r: &StabilizerReport) -> String {
    format!(
        "tuple_size: {}\nspan_signature: ({},{})\ndegenerate_span: {}\n\
         ambient: SO+({},{})\nbijective_upto: {}\nodd_vanishing_upto: {}\n\
         finite_quotient_bound: {}\nindex_in_ambient: {}",
        r.tuple_size,
        r.span_signature.0,
        r.span_signature.1,
        r.degenerate_span,
        r.ambient_so.0,
        r.ambient_so.1,
        r.stable_range.bijective_upto,
        r.odd_vanishing_upto,
        r.finite_quotient_bound,
        match &r.sublattice.index_in_ambient {
            IndexInAmbient::Finite(n) => n.to_string(),
            IndexInAmbient::Degenerate => "degenerate".to_string(),
        }
    )
}

fn report_text(r: &ObstructionReport, cite: bool) -> String {
    let mut lines = vec![
        format!("k: {}", r.fiber_dim_quarter),
        format!("signature: ({},{})", r.signature.0, r.signature.1),
        format!("stable_iso_upto: {}", r.stable_range.iso_upto_with_2q),
    ];
    for c in &r.candidates {
        let mut line = format!(
            "candidate: i={} degree={} in_stable_range={} bott_obstruction={}",
            c.class_index, c.degree, c.in_stable_range, c.bott_obstruction
        );
        if cite && c.bott_obstruction {
            line.push_str("  # vanishes on flat bundles: degree exceeds twice the fiber dimension");
        }
        lines.push(line);
    }
    lines.push(format!("verdict: {}", r.verdict.text()));
    if let Verdict::Obstructed(certs) = &r.verdict {
        for cert in certs {
            let mut line = match cert {
                Certification::K3Summand => "certified-by: k3-summand (class l2)".to_string(),
                Certification::SurfaceGenus { genus, threshold } => format!(
                    "certified-by: surface-genus (genus {} >= threshold {})",
                    genus, threshold
                ),
            };
            if cite {
                let why = match cert {
                    Certification::K3Summand => {
                        "the degree-8 class is nonzero on the mapping class group when the K3 \
                         form splits off, via the Einstein-moduli detection chain"
                    }
                    Certification::SurfaceGenus { .. } => {
                        "kappa classes stay independent up to degree genus/2 - 1, which reaches \
                         the first flat-vanishing degree"
                    }
                };
                line.push_str(&format!("  # {why}"));
            }
            lines.push(line);
        }
    }
    lines.join("\n")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report values serialize")
}

pub fn dispatch(cli: &Cli) -> Result<CmdOutput, CliError> {
    match &cli.command {
        Command::Lattice {
            spec,
            signature,
            sublattice,
            direct_sum,
        } => {
            let mut l = parse_lattice(spec)?;
            if let Some(other) = direct_sum {
                l = l.direct_sum(&parse_lattice(other)?);
            }
            if let Some(vec_spec) = sublattice {
                let vecs = parse_vectors(vec_spec)?;
                let rep = l.sublattice_report(&vecs)?;
                return if cli.json {
                    CmdOutput::ok(pretty(&js::sublattice_report_to_json(&rep)))
                } else {
                    CmdOutput::ok(sublattice_text(&rep))
                };
            }
            if *signature {
                return if cli.json {
                    CmdOutput::ok(pretty(&js::signature_to_json(&l.signature())))
                } else {
                    CmdOutput::ok(signature_text(&l))
                };
            }
            if cli.json {
                let mut v = js::lattice_summary_to_json(&l);
                if direct_sum.is_some() {
                    v["gram"] = js::lattice_to_json(&l)["gram"].clone();
                }
                CmdOutput::ok(pretty(&v))
            } else {
                let mut text = lattice_summary_text(&l);
                if direct_sum.is_some() {
                    text.push_str("\ngram:\n");
                    text.push_str(&gram_lines(l.gram()));
                }
                CmdOutput::ok(text)
            }
        }

        Command::Roots {
            spec,
            norm,
            coord_box,
            count,
        } => {
            let l = parse_lattice(spec)?;
            let vectors = l.enumerate_vectors(*norm, *coord_box)?;
            if cli.json {
                let v = json!({
                    "count": vectors.len(),
                    "vectors": if *count { Value::Null } else {
                        Value::Array(vectors.iter().map(js::vector_to_json).collect())
                    },
                });
                CmdOutput::ok(pretty(&v))
            } else if *count {
                CmdOutput::ok(format!("count: {}", vectors.len()))
            } else {
                let mut lines: Vec<String> = vectors.iter().map(|v| v.to_string()).collect();
                lines.push(format!("count: {}", vectors.len()));
                CmdOutput::ok(lines.join("\n"))
            }
        }

        Command::Isometry(cmd) => {
            let (g, class) = match cmd {
                IsometryCmd::Reflect { lattice, vector } => {
                    let l = parse_lattice(lattice)?;
                    let v = parse_json_value(vector, "vector")?;
                    let vec = js::vector_from_json(&v)?;
                    let g = reflection(&l, &vec)?;
                    let class = g.classify()?;
                    (g, class)
                }
                IsometryCmd::Classify { isometry } => {
                    let v = parse_json_value(isometry, "isometry")?;
                    let g = js::isometry_from_json(&v)?;
                    let class = g.classify()?;
                    (g, class)
                }
                IsometryCmd::Compose { left, right } => {
                    let lv = parse_json_value(left, "isometry")?;
                    let rv = parse_json_value(right, "isometry")?;
                    let g = js::isometry_from_json(&lv)?;
                    let h = js::isometry_from_json(&rv)?;
                    let gh = g.compose(&h)?;
                    let class = gh.classify()?;
                    (gh, class)
                }
            };
            if cli.json {
                let v = json!({
                    "isometry": js::isometry_to_json(&g),
                    "class": js::isometry_class_to_json(&class),
                });
                CmdOutput::ok(pretty(&v))
            } else {
                CmdOutput::ok(isometry_text(&g)?)
            }
        }

        Command::Genus(cmd) => match cmd {
            GenusCmd::Series { order } => {
                let s = l_tilde_series(*order);
                if cli.json {
                    CmdOutput::ok(pretty(&js::series_to_json(&s)))
                } else {
                    CmdOutput::ok(s.to_string().trim_end().to_string())
                }
            }
            GenusCmd::Rank2 { j } => {
                let p = genus::l_tilde_rank2(*j);
                if cli.json {
                    CmdOutput::ok(pretty(&js::graded_to_json(&p)))
                } else {
                    CmdOutput::ok(p.to_string())
                }
            }
            GenusCmd::Integrate { poly } => {
                let v = parse_json_value(poly, "e-polynomial")?;
                let obj = v
                    .as_object()
                    .ok_or_else(|| usage("expected a JSON map of e-powers to rationals"))?;
                let mut p = GradedPolynomial::zero();
                for (pow, coeff) in obj {
                    let e: u32 = pow
                        .parse()
                        .map_err(|_| usage(format!("bad e-power {pow:?}")))?;
                    let c: BigRational = match coeff {
                        Value::String(s) => js::parse_rational(s)?,
                        Value::Number(n) => js::parse_rational(&n.to_string())?,
                        _ => return Err(usage("coefficients must be integers or \"a/b\" strings")),
                    };
                    p.add_term(Monomial::power(Generator::Euler, e), c);
                }
                let out = genus::fiber_integrate_surface(&p);
                if cli.json {
                    CmdOutput::ok(pretty(&js::graded_to_json(&out)))
                } else {
                    CmdOutput::ok(out.to_string())
                }
            }
            GenusCmd::Ch { rank, max_degree } => {
                let p = genus::chern_character_real(*rank, *max_degree)?;
                if cli.json {
                    CmdOutput::ok(pretty(&js::graded_to_json(&p)))
                } else {
                    CmdOutput::ok(p.to_string())
                }
            }
            GenusCmd::Bo3 => {
                let rep = genus::verify_bo3_relation();
                if cli.json {
                    CmdOutput::ok(pretty(&js::bo3_report_to_json(&rep)))
                } else {
                    CmdOutput::ok(format!(
                        "ch4^2: {}\n12*ch8: {}\nequal: {}\nch4*ch8: {}\nch12: {}\ndegree12_ratio: {}",
                        rep.ch4_squared,
                        rep.twelve_ch8,
                        rep.equal,
                        rep.ch4_times_ch8,
                        rep.ch12,
                        rep.degree12_ratio
                            .as_ref()
                            .map(|q| q.to_string())
                            .unwrap_or_else(|| "none".to_string())
                    ))
                }
            }
        },

        Command::Ell(cmd) => match cmd {
            EllCmd::Class { i } => {
                if *i == 0 {
                    return Err(usage("ell class indices start at 1"));
                }
                let p = genus::ell_from_ch(*i);
                if cli.json {
                    CmdOutput::ok(pretty(&js::graded_to_json(&p)))
                } else {
                    CmdOutput::ok(p.to_string())
                }
            }
            EllCmd::Relation => {
                let rep = genus::ell_relation();
                if cli.json {
                    CmdOutput::ok(pretty(&js::ell_relation_to_json(&rep)))
                } else {
                    CmdOutput::ok(format!(
                        "computed_constant: {}\nchern_relation_constant: {}\nmatches_chern_constant: {}\n\
                         note: substituting l_i = 2*ch_{{4i}} into ch4^2 = 12*ch8 doubles the constant",
                        rep.computed_constant,
                        rep.chern_relation_constant,
                        rep.matches_chern_constant
                    ))
                }
            }
            EllCmd::Surfaces { i, genera } => {
                if *i == 0 {
                    return Err(usage("ell class indices start at 1"));
                }
                let gs = parse_genera(genera)?;
                let rep = genus::ell_product_of_surfaces(&gs, *i)?;
                if cli.json {
                    CmdOutput::ok(pretty(&js::surface_product_to_json(&rep)))
                } else {
                    CmdOutput::ok(format!(
                        "genera: {:?}\nclass: l{}\nexpansion: {}",
                        rep.genera, rep.class_index, rep.expansion
                    ))
                }
            }
        },

        Command::Sum { monomial, summands } => {
            if *summands == 0 {
                return Err(usage("need at least one summand"));
            }
            let m = parse_ell_monomial(monomial)?;
            let t = tensor::connected_sum_pullback(&m, *summands);
            if cli.json {
                CmdOutput::ok(pretty(&js::tensor_to_json(&t)))
            } else {
                CmdOutput::ok(t.to_string())
            }
        }

        Command::Independence { generators, cap } => {
            let cert = tensor::independence_certificate(*generators, *cap)?;
            if cli.json {
                CmdOutput::ok(pretty(&js::certificate_to_json(&cert)))
            } else {
                let mut lines = vec![
                    format!("generators: {}", cert.generators),
                    format!("total_degree_cap: {}", cert.total_degree_cap),
                    format!("injective: {}", cert.injective),
                ];
                for e in &cert.entries {
                    let multiset: Vec<String> =
                        e.slot_multiset.iter().map(|m| m.to_string()).collect();
                    lines.push(format!("{} -> {{{}}}", e.monomial, multiset.join(",")));
                }
                CmdOutput::ok(lines.join("\n"))
            }
        }

        Command::Range { p, q, bott, harer } => {
            let forms = [p.is_some() || q.is_some(), bott.is_some(), harer.is_some()];
            if forms.iter().filter(|&&b| b).count() != 1 {
                return Err(usage(
                    "use exactly one of: `range P Q`, `range --bott I K`, `range --harer DEGREE`",
                ));
            }
            if let Some(args) = bott {
                let (i, k) = (args[0], args[1]);
                if i == 0 || k == 0 {
                    return Err(usage("bott indices start at 1"));
                }
                let val = obstruction::bott_obstruction(i, k);
                return if cli.json {
                    CmdOutput::ok(pretty(&json!({ "i": i, "k": k, "bott_obstruction": val })))
                } else {
                    CmdOutput::ok(val.to_string())
                };
            }
            if let Some(degree) = harer {
                if *degree == 0 {
                    return Err(usage("class degree must be at least 1"));
                }
                let g = obstruction::harer_genus_threshold(*degree);
                return if cli.json {
                    CmdOutput::ok(pretty(
                        &json!({ "class_degree": degree, "genus_threshold": g }),
                    ))
                } else {
                    CmdOutput::ok(g.to_string())
                };
            }
            let (Some(p), Some(q)) = (p, q) else {
                return Err(usage("`range P Q` needs both p and q"));
            };
            let r = obstruction::borel_stable_range(*p, *q)?;
            if cli.json {
                CmdOutput::ok(pretty(&js::stable_range_to_json(&r)))
            } else {
                CmdOutput::ok(stable_range_text(&r))
            }
        }

        Command::Stabilizer {
            spec,
            roots,
            e2,
            max_total_degree,
            tuples,
        } => {
            if *e2 {
                let range = parse_tuple_range(tuples)?;
                let rep = obstruction::e2_region_check(*max_total_degree, range)?;
                return if cli.json {
                    CmdOutput::ok(pretty(&js::e2_report_to_json(&rep)))
                } else {
                    let mut lines = vec![format!("max_total_degree: {}", rep.max_total_degree)];
                    for row in &rep.rows {
                        lines.push(format!(
                            "n={} partition=({},{}) max_odd_degree={} vanishing_upto={} ok={}",
                            row.tuple_size,
                            row.partition.0,
                            row.partition.1,
                            row.max_odd_degree
                                .map(|d| d.to_string())
                                .unwrap_or_else(|| "none".to_string()),
                            row.vanishing_upto,
                            row.ok
                        ));
                    }
                    lines.push(format!("all_ok: {}", rep.all_ok));
                    CmdOutput::ok(lines.join("\n"))
                };
            }
            let (Some(spec), Some(roots)) = (spec, roots) else {
                return Err(usage(
                    "stabilizer needs a lattice and --roots, or --e2 for the region check",
                ));
            };
            let l = parse_lattice(spec)?;
            let vecs = parse_vectors(roots)?;
            let rep = obstruction::stabilizer_report(&l, &vecs)?;
            if cli.json {
                CmdOutput::ok(pretty(&js::stabilizer_report_to_json(&rep)))
            } else {
                CmdOutput::ok(stabilizer_text(&rep))
            }
        }

        Command::Betti {
            arrangement,
            k3_roots,
            max_degree,
            check,
        } => {
            let arr: Arrangement = match (arrangement, k3_roots) {
                (Some(spec), None) => {
                    let v = parse_json_value(spec, "arrangement")?;
                    js::arrangement_from_json(&v)?
                }
                (None, Some(roots)) => {
                    let vecs = parse_vectors(roots)?;
                    k3_arrangement_from_roots(&nielsen_core::lattice::k3(), &vecs)?
                }
                _ => {
                    return Err(usage(
                        "betti needs an arrangement JSON or --k3-roots, not both",
                    ))
                }
            };
            if let Some(max_subset) = check {
                let out = arr.transversality_check(*max_subset);
                return if cli.json {
                    CmdOutput::ok(pretty(&js::transversality_to_json(&out)))
                } else {
                    let mut text = format!("ok: {}", out.ok);
                    if let Some(w) = &out.witness {
                        text.push_str(&format!("\nwitness: {w:?}"));
                    }
                    CmdOutput::ok(text)
                };
            }
            let table = arr.betti_complement(*max_degree)?;
            if cli.json {
                CmdOutput::ok(pretty(&js::betti_table_to_json(&table)))
            } else {
                CmdOutput::ok(table.to_string().trim_end().to_string())
            }
        }

        Command::Report {
            spec,
            k,
            k3_summand,
            surface_genera,
        } => {
            if *k == 0 {
                return Err(usage("k must be at least 1"));
            }
            let l = parse_lattice(spec)?;
            let genera = match surface_genera {
                Some(text) => Some(parse_genera(text)?),
                None => None,
            };
            let rep = obstruction::obstruction_report(&l, *k, *k3_summand, genera.as_deref())?;
            if cli.json {
                CmdOutput::ok(pretty(&js::obstruction_report_to_json(&rep, cli.cite)))
            } else {
                CmdOutput::ok(report_text(&rep, cli.cite))
            }
        }

        Command::Reproduce => {
            let results = crate::reproduce::run_all();
            let all_pass = results.iter().all(|r| r.pass);
            let text = if cli.json {
                let v = json!({
                    "all_pass": all_pass,
                    "criteria": results.iter().map(|r| json!({
                        "id": r.id,
                        "name": r.name,
                        "pass": r.pass,
                        "detail": r.detail,
                    })).collect::<Vec<_>>(),
                });
                pretty(&v)
            } else {
                let mut lines: Vec<String> = results
                    .iter()
                    .map(|r| {
                        format!(
                            "{} {:>2} {}: {}",
                            if r.pass { "pass" } else { "FAIL" },
                            r.id,
                            r.name,
                            r.detail
                        )
                    })
                    .collect();
                lines.push(format!("all: {}", if all_pass { "pass" } else { "FAIL" }));
                lines.join("\n")
            };
            Ok(CmdOutput {
                text,
                exit: if all_pass { 0 } else { 1 },
            })
        }
    }
}
