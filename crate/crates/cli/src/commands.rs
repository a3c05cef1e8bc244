use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use serde_json::{json, Value};

use mcx_core::actions::{orbits, quotient, validate_action, GroupAction};
use mcx_core::chain::{
    build_alternating_chain_complex, build_full_chain_complex, build_reduced_chain_complex, build_relative_complex, Basis,
    Chain, ChainComplex, Ring,
};
use mcx_core::covers::{
    check_repeated_color_vanishing, coloring_adapted, multiplicity, nerve, witnesses_from_raw, Cover, RawCover, RawWitness,
};
use mcx_core::diffusion::{convolve, diffuse_to_epsilon, diffusion_inequality, local_diffuse, toy_vanish};
use mcx_core::fixtures;
use mcx_core::formats::{
    chain_from_raw, chain_to_raw, cochain_from_raw, cochain_to_raw, function_from_raw, function_to_raw, local_action_from_raw,
    local_function_from_raw, local_point_key, measure_from_raw, measure_to_raw, set_action_from_raw, RawChain, RawCochain,
    RawFunction, RawLocalAction, RawMeasure, RawSetAction,
};
use mcx_core::homology::homology;
use mcx_core::mcx::{product_with_interval, skeleton, special_sphere, validate, Multicomplex, RawMulticomplex};
use mcx_core::norms::{audit_seminorm, integral_seminorm_bruteforce, seminorm_l1, simplicial_volume, IntegralSeminorm, SearchBounds, SeminormResult};
use mcx_core::num::{format_q, parse_q, Q};

use crate::io::{load_action, load_json, load_multicomplex, to_value, CliError, OrFail, Outcome};
use crate::{Command, RingArg, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    Circle,
    CircleEdgeSwap,
    CircleAntipodal,
    BrokenComposition,
    DoubleEdge,
    DoubleEdgeSwap,
    ConeDoubleEdge,
    ConeEdgeSwap,
    Triangle,
    Tetrahedron,
    Torus,
    Hexagon,
    HexagonArcs,
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { mc, action, cover } => validate_cmd(&mc.multicomplex, action.as_deref(), cover.as_deref()),
        Command::Skeleton { mc, dim } => {
            let mc = load_multicomplex(&mc.multicomplex)?;
            Ok(multicomplex_outcome(&skeleton(&mc, dim)))
        }
        Command::Sphere { dim, labels } => {
            let labels = labels.unwrap_or_else(|| (0..=dim).map(|i| i.to_string()).collect());
            Ok(multicomplex_outcome(&special_sphere(dim, &labels).domain()?))
        }
        Command::Product { mc } => {
            let mc = load_multicomplex(&mc.multicomplex)?;
            Ok(multicomplex_outcome(&product_with_interval(&mc).domain()?.product))
        }
        Command::Homology { mc, ring, variant, sub } => homology_cmd(&mc.multicomplex, ring, variant, &sub),
        Command::Seminorm { mc, chain, variant } => seminorm_cmd(&mc.multicomplex, &chain, variant, false),
        Command::Dual { mc, chain, variant } => seminorm_cmd(&mc.multicomplex, &chain, variant, true),
        Command::Volume { mc } => volume_cmd(&mc.multicomplex),
        Command::IntSeminorm { mc, chain, variant, coeff_bound, support_bound, budget } => {
            int_seminorm_cmd(&mc.multicomplex, &chain, variant, SearchBounds { coeff_bound, support_bound, budget })
        }
        Command::Quotient { mc, action } => quotient_cmd(&mc.multicomplex, &action),
        Command::Orbits { mc, action, degree, variant } => orbits_cmd(&mc.multicomplex, &action, degree, variant),
        Command::Average { mc, action, cochain, variant } => average_cmd(&mc.multicomplex, &action, &cochain, variant),
        Command::Diffuse { action, function, epsilon, measure } => {
            diffuse_cmd(&action, &function, epsilon.as_deref(), measure.as_deref())
        }
        Command::LocalDiffuse { action, function, epsilon, epsilons, threshold } => {
            local_diffuse_cmd(&action, &function, epsilon.as_deref(), epsilons, threshold)
        }
        Command::ToyVanish { mc, action, chain, epsilon } => toy_vanish_cmd(&mc.multicomplex, &action, &chain, &epsilon),
        Command::Nerve { mc, cover, max_dim } => {
            let (mc, cover) = load_cover(&mc.multicomplex, &cover)?;
            let _ = mc;
            Ok(multicomplex_outcome(&nerve(&cover, max_dim)))
        }
        Command::Mult { mc, cover } => mult_cmd(&mc.multicomplex, &cover),
        Command::Coloring { mc, cover } => coloring_cmd(&mc.multicomplex, &cover),
        Command::VanishCheck { mc, action, cover, cochain, witnesses } => {
            vanish_check_cmd(&mc.multicomplex, &action, &cover, &cochain, &witnesses)
        }
        Command::Fixture { name } => Ok(fixture_cmd(name)),
    }
}

fn q_str(x: &Q) -> String {
    format_q(x)
}

fn parse_epsilon(s: &str) -> Result<Q, CliError> {
    parse_q(s).ok_or_else(|| CliError::Parse(format!("`{s}` is not an exact rational")))
}

fn multicomplex_value(mc: &Multicomplex) -> Value {
    to_value(&RawMulticomplex::from_multicomplex(mc))
}

fn multicomplex_outcome(mc: &Multicomplex) -> Outcome {
    let counts: Vec<String> = (0..=mc.dim().unwrap_or(0)).map(|n| mc.count_of_dim(n).to_string()).collect();
    Outcome::ok(multicomplex_value(mc), format!("multicomplex with simplex counts ({}) by dimension", counts.join(", ")))
}

fn valid_multicomplex(path: &str) -> Result<Multicomplex, CliError> {
    let mc = load_multicomplex(path)?;
    mc.ensure_valid().domain()?;
    Ok(mc)
}

fn validate_cmd(path: &str, action: Option<&str>, cover: Option<&str>) -> Result<Outcome, CliError> {
    let mc = load_multicomplex(path)?;
    let report = validate(&mc);
    let mut value = json!({ "multicomplex": to_value(&report) });
    let mut ok = report.ok;
    let mut summary = vec![format!("multicomplex: {}", if report.ok { "valid" } else { "invalid" })];
    if let Some(path) = action {
        let a = load_action(path, &mc)?;
        let r = validate_action(&a, &mc).domain()?;
        ok &= r.ok;
        summary.push(format!("action: {}", if r.ok { "valid" } else { "invalid" }));
        value["action"] = to_value(&r);
    }
    if let Some(path) = cover {
        let c = Cover::from_raw(&load_json::<RawCover>(path)?, &mc).parse()?;
        let full = c.covers_everything();
        ok &= full;
        summary.push(format!("cover: {}", if full { "covers every vertex" } else { "misses a vertex" }));
        value["cover"] = json!({ "covers_everything": full, "members": c.len() });
    }
    value["ok"] = Value::from(ok);
    let summary = summary.join("; ");
    let failure = (!ok).then(|| CliError::Domain(format!("validation failed ({summary})")));
    Ok(Outcome::ok(value, summary).with_failure(failure))
}

fn complex_for(mc: &Multicomplex, variant: Variant, max_degree: usize, sub: &[String]) -> Result<ChainComplex, CliError> {
    mc.ensure_valid().domain()?;
    match variant {
        Variant::Full => build_full_chain_complex(mc, max_degree, Basis::WithRepeats).domain(),
        Variant::Reduced => build_reduced_chain_complex(mc, max_degree).domain(),
        Variant::Alternating => build_alternating_chain_complex(mc, max_degree).domain(),
        Variant::Relative => {
            let sub = sub
                .iter()
                .map(|id| mc.simplex_ix(id).ok_or_else(|| CliError::Parse(format!("unknown simplex `{id}`"))))
                .collect::<Result<BTreeSet<_>, _>>()?;
            build_relative_complex(mc, &sub, Basis::Reduced, max_degree).domain()
        }
    }
}

fn homology_cmd(path: &str, ring: RingArg, variant: Variant, sub: &[String]) -> Result<Outcome, CliError> {
    let mc = load_multicomplex(path)?;
    let dim = mc.dim().ok_or_else(|| CliError::Domain("empty multicomplex".into()))?;
    // Tuples with repeats exist above the dimension, so one more degree makes the top homology exact.
    let top = if variant == Variant::Full { dim + 1 } else { dim };
    let cc = complex_for(&mc, variant, top, sub)?;
    let ring = match ring {
        RingArg::Z => Ring::Z,
        RingArg::Q => Ring::Q,
    };
    let h = homology(&cc, ring);
    let generators: BTreeMap<String, Vec<RawChain>> = h
        .degrees
        .iter()
        .map(|d| (d.degree.to_string(), h.generators(d.degree).iter().map(|g| chain_to_raw(g, &cc)).collect()))
        .collect();
    let betti = h.betti_numbers();
    let torsion: Vec<String> = h
        .summary()
        .iter()
        .filter(|d| !d.torsion.is_empty())
        .map(|d| format!("H{} torsion {}", d.degree, d.torsion.join(",")))
        .collect();
    let summary = format!(
        "betti ({}) over {}{}",
        betti.iter().map(usize::to_string).collect::<Vec<_>>().join(", "),
        ring,
        if torsion.is_empty() { String::new() } else { format!("; {}", torsion.join("; ")) }
    );
    let value = json!({
        "ring": ring,
        "variant": format!("{variant:?}").to_lowercase(),
        "betti": betti,
        "degrees": to_value(&h.summary()),
        "generators": to_value(&generators),
    });
    Ok(Outcome::ok(value, summary))
}

fn chain_complex_for_cycle(mc: &Multicomplex, raw: &RawChain, variant: Variant) -> Result<(ChainComplex, Chain), CliError> {
    let variant = match variant {
        Variant::Full | Variant::Reduced => variant,
        _ => return Err(CliError::Parse("seminorms use --variant full or reduced".into())),
    };
    let cc = complex_for(mc, variant, raw.degree + 1, &[])?;
    let z = chain_from_raw(raw, &cc).parse()?;
    Ok((cc, z))
}

fn seminorm_value(cc: &ChainComplex, r: &SeminormResult) -> Value {
    json!({
        "value": q_str(&r.value),
        "representative": to_value(&chain_to_raw(&r.representative, cc)),
        "bounding": to_value(&chain_to_raw(&r.bounding, cc)),
        "certificate": to_value(&cochain_to_raw(&r.certificate, cc)),
        "pivots": r.pivots,
    })
}

fn seminorm_cmd(path: &str, chain: &str, variant: Variant, audit_only: bool) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let (cc, z) = chain_complex_for_cycle(&mc, &load_json(chain)?, variant)?;
    let r = seminorm_l1(&cc, &z).domain()?;
    let check = audit_seminorm(&cc, &z, &r).domain()?;
    let mut value = if audit_only { json!({ "value": q_str(&r.value) }) } else { seminorm_value(&cc, &r) };
    value["dual_check"] = to_value(&check);
    let failure = (!check.all()).then(|| CliError::Internal(format!("seminorm audit failed: {check:?}")));
    let summary = format!("seminorm {} (duality gap {})", q_str(&r.value), if check.zero_gap { "0" } else { "nonzero" });
    Ok(Outcome::ok(value, summary).with_failure(failure))
}

fn volume_cmd(path: &str) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let r = simplicial_volume(&mc).domain()?;
    let n = r.representative.degree;
    let cc = build_reduced_chain_complex(&mc, n).domain()?;
    let fundamental = r.representative.minus(&cc.boundary(&r.bounding).internal()?);
    let check = audit_seminorm(&cc, &fundamental, &r).domain()?;
    let mut value = seminorm_value(&cc, &r);
    value["dual_check"] = to_value(&check);
    let failure = (!check.all()).then(|| CliError::Internal(format!("volume audit failed: {check:?}")));
    Ok(Outcome::ok(value, format!("simplicial volume {}", q_str(&r.value))).with_failure(failure))
}

fn int_seminorm_cmd(path: &str, chain: &str, variant: Variant, bounds: SearchBounds) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let (cc, z) = chain_complex_for_cycle(&mc, &load_json(chain)?, variant)?;
    let r = integral_seminorm_bruteforce(&cc, &z, bounds).domain()?;
    let bounds_value = json!({ "coeff_bound": bounds.coeff_bound, "support_bound": bounds.support_bound, "budget": bounds.budget });
    Ok(match r {
        IntegralSeminorm::Found { value, witness, global } => Outcome::ok(
            json!({ "status": "found", "value": value, "witness": to_value(&chain_to_raw(&witness, &cc)), "global": global, "bounds": bounds_value }),
            format!("integral seminorm {}{value}", if global { "" } else { "at most " }),
        ),
        IntegralSeminorm::Unknown { examined } => Outcome::ok(
            json!({ "status": "unknown", "examined": examined, "bounds": bounds_value }),
            format!("no integral representative in the search region ({examined} candidates examined)"),
        ),
    })
}

fn load_valid_action(path: &str, mc: &Multicomplex) -> Result<GroupAction, CliError> {
    let a = load_action(path, mc)?;
    let r = validate_action(&a, mc).domain()?;
    if !r.ok {
        return Err(CliError::Domain(format!("invalid action: {r}")));
    }
    Ok(a)
}

fn quotient_cmd(path: &str, action: &str) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let a = load_valid_action(action, &mc)?;
    let q = quotient(&a, &mc).domain()?;
    let mut out = multicomplex_outcome(&q.multicomplex);
    out.value["projection"] = to_value(&q.projection.to_raw(&mc, &q.multicomplex));
    out.summary = format!("quotient: {}", out.summary);
    Ok(out)
}

fn orbits_cmd(path: &str, action: &str, degree: usize, variant: Variant) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let a = load_valid_action(action, &mc)?;
    let cc = complex_for(&mc, variant, degree, &[])?;
    let p = orbits(&a, &cc, degree).domain()?;
    let listed: Vec<Vec<String>> = p.orbits.iter().map(|o| o.iter().map(|s| cc.display_label(s)).collect()).collect();
    let summary = format!("{} orbits in degree {degree}", listed.len());
    Ok(Outcome::ok(json!({ "degree": degree, "orbits": listed }), summary))
}

fn average_cmd(path: &str, action: &str, cochain: &str, variant: Variant) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let a = load_valid_action(action, &mc)?;
    let raw: RawCochain = load_json(cochain)?;
    let cc = complex_for(&mc, variant, raw.degree, &[])?;
    let phi = cochain_from_raw(&raw, &cc).parse()?;
    let avg = mcx_core::actions::average_cochain(&a, &cc, &phi);
    Ok(Outcome::ok(json!({ "cochain": to_value(&cochain_to_raw(&avg, &cc)) }), format!("averaged a degree-{} cochain", raw.degree)))
}

fn diffuse_cmd(action: &str, function: &str, epsilon: Option<&str>, measure: Option<&str>) -> Result<Outcome, CliError> {
    let a = set_action_from_raw(&load_json::<RawSetAction>(action)?).parse()?;
    let f = function_from_raw(&load_json::<RawFunction>(function)?, &a).parse()?;
    let key = |p: &Vec<i64>| a.point_key(p);
    if let Some(m) = measure {
        let mu = measure_from_raw(&load_json::<RawMeasure>(m)?, &a.group).parse()?;
        let out = convolve(&mu, &f, &a);
        let mut value = json!({
            "output": to_value(&function_to_raw(&out, key)),
            "norm": q_str(&out.l1_norm()),
            "sum": q_str(&out.sum()),
        });
        let mut failure = None;
        if !f.is_zero() {
            let check = diffusion_inequality(&mu, &f, &a).domain()?;
            value["inequality"] = json!({ "lhs": q_str(&check.lhs), "rhs": q_str(&check.rhs), "holds": check.holds() });
            if !check.holds() {
                failure = Some(CliError::Internal("diffusion inequality violated".into()));
            }
        }
        let summary = format!("‖μ∗f‖₁ = {}", q_str(&out.l1_norm()));
        return Ok(Outcome::ok(value, summary).with_failure(failure));
    }
    let eps = parse_epsilon(epsilon.ok_or_else(|| CliError::Parse("give --epsilon or --measure".into()))?)?;
    let d = diffuse_to_epsilon(&a, &f, &eps).domain()?;
    let value = json!({
        "output": to_value(&function_to_raw(&d.output, key)),
        "measure": to_value(&measure_to_raw(&d.measure, &a.group, None)),
        "norm": q_str(&d.output.l1_norm()),
        "derivative": q_str(&d.derivative),
        "bound": q_str(&d.bound),
        "certified": d.certified,
    });
    let failure = (!d.certified).then(|| CliError::Internal("diffusion bound not certified".into()));
    let summary = format!("‖f′‖₁ = {} ≤ {} with a measure of support {}", q_str(&d.output.l1_norm()), q_str(&d.bound), d.measure.support_len());
    Ok(Outcome::ok(value, summary).with_failure(failure))
}

fn local_diffuse_cmd(
    action: &str,
    function: &str,
    epsilon: Option<&str>,
    epsilons: Option<Vec<String>>,
    threshold: usize,
) -> Result<Outcome, CliError> {
    let a = local_action_from_raw(&load_json::<RawLocalAction>(action)?).parse()?;
    let f = local_function_from_raw(&load_json::<RawFunction>(function)?, &a).parse()?;
    let eps: Vec<Q> = match (epsilon, epsilons) {
        (Some(e), None) => vec![parse_epsilon(e)?; a.num_orbits()],
        (None, Some(list)) => list.iter().map(|e| parse_epsilon(e)).collect::<Result<_, _>>()?,
        _ => return Err(CliError::Parse("give --epsilon or --epsilons".into())),
    };
    let r = local_diffuse(&a, &f, &eps, threshold).domain()?;
    let value = json!({
        "output": to_value(&function_to_raw(&r.output, local_point_key)),
        "orbit_norms": r.orbit_norms.iter().map(q_str).collect::<Vec<_>>(),
        "orbit_sums": r.orbit_sums.iter().map(q_str).collect::<Vec<_>>(),
        "horizons": r.horizons,
        "enumerated_orbits": r.enumerated_orbits,
        "measure_supports": r.measures.iter().map(|m| m.support_len()).collect::<Vec<_>>(),
        "sums_preserved": r.sums_preserved,
        "within_budget": r.within_budget,
        "note": "asymptotic disjointness is checked on the enumerated orbits only",
    });
    let ok = r.sums_preserved && r.within_budget;
    let failure = (!ok).then(|| CliError::Internal("local diffusion missed its budgets".into()));
    let summary = format!("local diffusion over {} orbits: budgets {}", r.enumerated_orbits, if ok { "met" } else { "missed" });
    Ok(Outcome::ok(value, summary).with_failure(failure))
}

fn toy_vanish_cmd(path: &str, action: &str, chain: &str, epsilon: &str) -> Result<Outcome, CliError> {
    let mc = valid_multicomplex(path)?;
    let a = load_action(action, &mc)?;
    let raw: RawChain = load_json(chain)?;
    let cc = build_full_chain_complex(&mc, raw.degree + 1, Basis::WithRepeats).domain()?;
    let z = chain_from_raw(&raw, &cc).parse()?;
    let eps = parse_epsilon(epsilon)?;
    let r = toy_vanish(&mc, &a, &z, &eps).domain()?;
    let value = json!({
        "output": to_value(&chain_to_raw(&r.output, &r.complex)),
        "norm": q_str(&r.norm),
        "bounding": to_value(&chain_to_raw(&r.bounding, &r.complex)),
        "certified": r.certified,
        "orbits": r.orbits.iter().map(|o| o.iter().map(|s| r.complex.display_label(s)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "odd_reorderings_literal": r.odd_permutations.literal,
        "accepted_by_orbit_sums": r.odd_permutations.via_orbit_sums.iter().map(|s| r.complex.display_label(s)).collect::<Vec<_>>(),
        "total_measure": to_value(&measure_to_raw(&r.total_measure, &mcx_core::diffusion::GroupModel::Finite(a.group.clone()), None)),
    });
    let failure = (!r.certified).then(|| CliError::Internal("toy vanishing certificate failed".into()));
    Ok(Outcome::ok(value, format!("‖c′‖₁ = {} with a checked bounding chain", q_str(&r.norm))).with_failure(failure))
}

fn load_cover(path: &str, cover: &str) -> Result<(Multicomplex, Cover), CliError> {
    let mc = load_multicomplex(path)?;
    let c = Cover::from_raw(&load_json::<RawCover>(cover)?, &mc).parse()?;
    Ok((mc, c))
}

fn mult_cmd(path: &str, cover: &str) -> Result<Outcome, CliError> {
    let (_, c) = load_cover(path, cover)?;
    let m = multiplicity(&c);
    let n = nerve(&c, None);
    let dim = n.dim().map_or(-1, |d| d as i64);
    let holds = m as i64 == 1 + dim;
    let failure = (!holds).then(|| CliError::Internal("multiplicity differs from 1 + dim nerve".into()));
    let amenable: BTreeMap<&str, Option<bool>> = c.indices.iter().map(String::as_str).zip(c.amenable.iter().copied()).collect();
    Ok(Outcome::ok(
        json!({ "multiplicity": m, "nerve_dim": dim, "identity_holds": holds, "amenable": amenable }),
        format!("multiplicity {m}, nerve dimension {dim}"),
    )
    .with_failure(failure))
}

fn coloring_cmd(path: &str, cover: &str) -> Result<Outcome, CliError> {
    let (mc, c) = load_cover(path, cover)?;
    let coloring = coloring_adapted(&mc, &c).domain()?;
    let colors: BTreeMap<&str, &str> =
        (0..mc.num_vertices()).map(|v| (mc.vertex_name(v), c.indices[coloring.colors[v]].as_str())).collect();
    let used: BTreeSet<&str> = colors.values().copied().collect();
    Ok(Outcome::ok(json!({ "colors": colors }), format!("adapted coloring with {} colors", used.len())))
}

fn vanish_check_cmd(path: &str, action: &str, cover: &str, cochain: &str, witnesses: &str) -> Result<Outcome, CliError> {
    let (mc, c) = load_cover(path, cover)?;
    mc.ensure_valid().domain()?;
    let a = load_action(action, &mc)?;
    let raw: RawCochain = load_json(cochain)?;
    let cc = build_full_chain_complex(&mc, raw.degree, Basis::Distinct).domain()?;
    let phi = cochain_from_raw(&raw, &cc).parse()?;
    let coloring = coloring_adapted(&mc, &c).domain()?;
    let w = witnesses_from_raw(&load_json::<BTreeMap<String, RawWitness>>(witnesses)?, &mc, &a).parse()?;
    let r = check_repeated_color_vanishing(&mc, &cc, &phi, &a, &coloring, &w).domain()?;
    let ids = |v: &[usize]| v.iter().map(|&s| mc.simplex(s).id.clone()).collect::<Vec<_>>();
    let values: Vec<Value> = r
        .values
        .iter()
        .map(|v| json!({ "simplex": cc.display_label(&v.label), "value": q_str(&v.value), "invariant": v.invariant, "alternating": v.alternating }))
        .collect();
    let all_zero = r.all_zero();
    let failure = (!all_zero).then(|| CliError::Internal("a witnessed simplex carries a nonzero value".into()));
    let summary = format!(
        "{} witnessed values, all zero: {all_zero}; {} unwitnessed repeated-color simplices",
        values.len(),
        r.unwitnessed.len()
    );
    Ok(Outcome::ok(
        json!({ "values": values, "all_zero": all_zero, "unwitnessed": ids(&r.unwitnessed), "unconstrained": ids(&r.unconstrained) }),
        summary,
    )
    .with_failure(failure))
}

fn fixture_cmd(name: FixtureName) -> Outcome {
    let action = |mc: &Multicomplex, a: GroupAction| Outcome::ok(to_value(&a.to_raw(mc)), "action fixture");
    match name {
        FixtureName::Circle => multicomplex_outcome(&fixtures::circle()),
        FixtureName::CircleEdgeSwap => {
            let mc = fixtures::circle();
            action(&mc, fixtures::circle_edge_swap(&mc))
        }
        FixtureName::CircleAntipodal => {
            let mc = fixtures::circle();
            action(&mc, fixtures::circle_antipodal(&mc))
        }
        FixtureName::BrokenComposition => {
            let mc = fixtures::circle();
            action(&mc, fixtures::broken_composition(&mc))
        }
        FixtureName::DoubleEdge => multicomplex_outcome(&fixtures::double_edge()),
        FixtureName::DoubleEdgeSwap => {
            let mc = fixtures::double_edge();
            action(&mc, fixtures::edge_swap(&mc))
        }
        FixtureName::ConeDoubleEdge => multicomplex_outcome(&fixtures::cone_over_double_edge()),
        FixtureName::ConeEdgeSwap => {
            let mc = fixtures::cone_over_double_edge();
            action(&mc, fixtures::edge_swap(&mc))
        }
        FixtureName::Triangle => multicomplex_outcome(&fixtures::triangle_boundary()),
        FixtureName::Tetrahedron => multicomplex_outcome(&fixtures::tetrahedron_boundary()),
        FixtureName::Torus => multicomplex_outcome(&fixtures::seven_vertex_torus()),
        FixtureName::Hexagon => multicomplex_outcome(&fixtures::hexagon()),
        FixtureName::HexagonArcs => {
            let mc = fixtures::hexagon();
            let raw = fixtures::hexagon_arcs(&mc).to_raw(&mc, Some("hexagon".into()));
            Outcome::ok(to_value(&raw), "cover fixture")
        }
    }
}
