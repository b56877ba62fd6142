use std::io::Write;

use binact_core::continuum::EuclideanAction;
use binact_core::enumerate::{self, census_row, enumerate_binary_actions, space_id, Limits};
use binact_core::gallery::standard_distributive_action;
use binact_core::implications::{implication_violations, relabeling_violations, seeded_permutation};
use binact_core::io::{action_to_json, ActionFile};
use binact_core::morphism::{classify_transitive_distributive, is_biequimorphism, verify_prop2, verify_theorem2};
use binact_core::orbit::{orbit, translation_from_report};
use binact_core::registry::{self, subgroup_by_members, GallerySpace, SPACE_NAMES};
use binact_core::{BinaryGSpace, Error, FiniteGroup, Subgroup, WindowedIntSpace};
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, Outcome};
use crate::resolve::{self, describe_space, describe_windowed, labels, Space};
use crate::{emit_line, Cli, Command, ContinuumAction, GalleryAction, Target};

pub fn run(cli: &Cli, inputs: &mut Value, out: &mut dyn Write) -> CliResult<Outcome> {
    let max = cli.max_order;
    match &cli.command {
        Command::Validate { target } => validate(target, max, inputs),
        Command::Orbit { space, point } => orbit_cmd(space, point, max, inputs),
        Command::Steps { space } => steps(space, max, inputs),
        Command::Classify {
            target,
            carrier,
            point,
            budget,
        } => classify(target, *carrier, point.as_deref(), *budget, max, inputs),
        Command::Census { group, carrier, budget } => census(group, *carrier, *budget, max, inputs, out),
        Command::VerifyThm1 {
            target,
            enumerate,
            carrier,
            point,
            all_bases,
            budget,
        } => verify_thm1(target, *enumerate, *carrier, point.as_deref(), *all_bases, *budget, max, inputs),
        Command::VerifyThm2 {
            target,
            enumerate,
            carrier,
            budget,
        } => verify_thm2(target, *enumerate, *carrier, *budget, max, inputs),
        Command::VerifyProp2 { group, subgroup, budget } => verify_prop2_cmd(group, subgroup, *budget, max, inputs),
        Command::VerifyImplications {
            target,
            carrier,
            random,
            no_census,
            seed,
            budget,
        } => verify_implications(target, *carrier, *random, *no_census, *seed, *budget, max, inputs),
        Command::Gallery { action, space, output } => gallery(*action, space.as_deref(), output.as_deref(), max, inputs),
        Command::Continuum {
            action,
            dim,
            samples,
            reach_samples,
            seed,
            tol_axiom,
            tol_reach,
            half_width,
            target,
            k,
        } => {
            let params = ContinuumParams {
                dim: *dim,
                samples: *samples,
                reach_samples: *reach_samples,
                seed: *seed,
                tol_axiom: *tol_axiom,
                tol_reach: *tol_reach,
                half_width: *half_width,
            };
            continuum(*action, &params, target.as_deref(), *k, inputs)
        }
        Command::Translate { space, point, to } => translate(space, point, to.as_deref(), max, inputs),
    }
}

fn limits(budget: u64) -> Limits {
    Limits {
        budget,
        ..Limits::default()
    }
}

fn flags_json(space: &BinaryGSpace) -> Value {
    let row = census_row(space);
    json!(row.flags)
}

fn subgroup_json(group: &FiniteGroup, h: &Subgroup) -> Value {
    json!({
        "members": h.members(),
        "names": h.members().iter().map(|&a| group.name(a)).collect::<Vec<_>>(),
    })
}

fn space_witness(space: &BinaryGSpace) -> Value {
    json!({ "space_id": space_id(space), "action": ActionFile::from_space(space) })
}

/// The spaces a verify command runs over: one named space, or every action
/// of a group on `carrier` points.
fn target_spaces(
    target: &Target,
    enumerate: bool,
    carrier: usize,
    budget: u64,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Option<Vec<BinaryGSpace>>> {
    if let Some(name) = &target.space {
        let s = resolve::finite_space(name, max)?;
        inputs["space"] = describe_space(name, &s);
        return Ok(Some(vec![s]));
    }
    let name = target.group.as_deref().expect("clap requires --space or --group");
    let g = resolve::group(name, max)?;
    inputs["group"] = json!({ "name": name, "order": g.order() });
    if !enumerate {
        return Ok(None);
    }
    inputs["carrier"] = json!(carrier);
    inputs["budget"] = json!(budget);
    let spaces: Vec<BinaryGSpace> = enumerate_binary_actions(&g, carrier, limits(budget))?.collect();
    Ok(Some(spaces))
}

fn validate(target: &Target, max: usize, inputs: &mut Value) -> CliResult<Outcome> {
    if let Some(name) = &target.group {
        inputs["group"] = json!(name);
        let g = resolve::group(name, max)?;
        let normals = g.normal_subgroups();
        let results = json!({
            "kind": "group",
            "order": g.order(),
            "abelian": g.is_abelian(),
            "element_orders": (0..g.order()).map(|a| g.element_order(a)).collect::<Vec<_>>(),
            "subgroups": g.all_subgroups().len(),
            "normal_subgroups": normals.len(),
        });
        return Ok(Outcome::pass(results, format!("group of order {} is valid", g.order())));
    }
    let name = target.space.as_deref().expect("clap requires --space or --group");
    inputs["space"] = json!(name);
    match resolve::space(name, max)? {
        Space::Finite(s) => {
            let cert = s.validate()?;
            inputs["space"] = describe_space(name, &s);
            let results = json!({
                "kind": "action",
                "group_order": s.group().order(),
                "carrier": s.carrier_size(),
                "identity_checks": cert.identity_checks,
                "composition_checks": cert.composition_checks,
            });
            Ok(Outcome::pass(
                results,
                format!("{} identity and {} composition checks hold", cert.identity_checks, cert.composition_checks),
            ))
        }
        Space::Windowed(w) => {
            inputs["space"] = describe_windowed(name, &w);
            let r = w.check_axioms();
            let summary = format!("{} checks, {} skipped (left the window), {} violations", r.checked, r.skipped, r.violations);
            Ok(Outcome::judged(json!({ "kind": "windowed", "axioms": r }), r.violations > 0, summary))
        }
    }
}

fn orbit_cmd(name: &str, point: &str, max: usize, inputs: &mut Value) -> CliResult<Outcome> {
    inputs["space"] = json!(name);
    inputs["point"] = json!(point);
    match resolve::space(name, max)? {
        Space::Finite(s) => {
            let x = resolve::point(&s, point, "--point")?;
            inputs["space"] = describe_space(name, &s);
            let r = orbit(&s, x)?;
            let g = s.group();
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|(&p, w)| {
                    json!({
                        "point": s.label(p),
                        "g": g.name(w.g),
                        "a1": s.label(w.a1),
                        "a2": s.label(w.a2),
                        "level": w.level,
                    })
                })
                .collect();
            let results = json!({
                "point": s.label(x),
                "index": x,
                "chain": r.chain.iter().map(|a| labels(&s, a)).collect::<Vec<_>>(),
                "chain_indices": r.chain.iter().map(|a| a.as_slice()).collect::<Vec<_>>(),
                "orbit": labels(&s, r.orbit()),
                "step": r.step,
                "witnesses": witnesses,
            });
            let summary = match r.step {
                Some(n) => format!("point {} stabilizes at step {n}", s.label(x)),
                None => format!("point {} does not stabilize; orbit has {} points", s.label(x), r.orbit().len()),
            };
            Ok(Outcome::pass(results, summary))
        }
        Space::Windowed(w) => {
            let x = resolve::integer_point(&w, point, "--point")?;
            inputs["space"] = describe_windowed(name, &w);
            let o = w.orbit(x).expect("point checked in window");
            let summary = format!("point {x}: orbit of {} points, step {:?}, {} escapes", o.orbit().len(), o.step, o.escapes);
            Ok(Outcome::pass(json!(o), summary))
        }
    }
}

fn steps(name: &str, max: usize, inputs: &mut Value) -> CliResult<Outcome> {
    inputs["space"] = json!(name);
    let (points, stabilization): (Vec<Value>, Vec<Value>) = match resolve::space(name, max)? {
        Space::Finite(s) => {
            inputs["space"] = describe_space(name, &s);
            let mut pts = Vec::new();
            let mut stab = Vec::new();
            for x in 0..s.carrier_size() {
                let r = orbit(&s, x)?;
                if r.step.is_some() {
                    stab.push(json!(s.label(x)));
                }
                pts.push(json!({ "point": s.label(x), "step": r.step, "orbit_size": r.orbit().len() }));
            }
            (pts, stab)
        }
        Space::Windowed(w) => {
            inputs["space"] = describe_windowed(name, &w);
            let mut pts = Vec::new();
            let mut stab = Vec::new();
            for x in w.carrier() {
                let o = w.orbit(x).expect("point in window");
                if o.step.is_some() {
                    stab.push(json!(x));
                }
                pts.push(json!({ "point": x, "step": o.step, "orbit_size": o.orbit().len(), "escapes": o.escapes }));
            }
            (pts, stab)
        }
    };
    let summary = format!("{} of {} points are stabilization points", stabilization.len(), points.len());
    let results = json!({
        "points": points,
        "homogeneous": !stabilization.is_empty(),
        "stabilization_points": stabilization,
    });
    Ok(Outcome::pass(results, summary))
}

fn classify_one(s: &BinaryGSpace, base: usize) -> CliResult<Value> {
    let g = s.group();
    let mut v = json!({
        "flags": flags_json(s),
        "isotropy": subgroup_json(g, &s.isotropy(base)),
    });
    if let Some(f) = s.distributivity_failure() {
        v["distributivity_witness"] = json!(f);
    }
    if let Some((point, missing)) = s.transitivity_failure() {
        v["transitivity_witness"] = json!({ "point": point, "missing": missing });
    }
    if let Some((point, element)) = s.freeness_failure() {
        v["freeness_witness"] = json!({ "point": point, "element": element });
    }
    if s.is_distributive() && s.is_transitive() {
        let c = classify_transitive_distributive(s, base)?;
        v["classification"] = json!({
            "base": c.base,
            "subgroup": subgroup_json(g, &c.subgroup),
            "map": c.map,
        });
    }
    Ok(v)
}

fn classify(
    target: &Target,
    carrier: usize,
    point: Option<&str>,
    budget: u64,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    let spaces = target_spaces(target, true, carrier, budget, max, inputs)?.expect("enumeration requested");
    if let (Some(_), [s]) = (&target.space, spaces.as_slice()) {
        let base = match point {
            Some(p) => resolve::point(s, p, "--point")?,
            None => 0,
        };
        inputs["point"] = json!(s.label(base));
        let v = classify_one(s, base)?;
        let key = census_row(s).flags.key();
        return Ok(Outcome::pass(v, format!("flags {key}")));
    }
    let mut rows = Vec::new();
    let mut summary = std::collections::BTreeMap::new();
    for s in &spaces {
        let mut v = classify_one(s, 0)?;
        v["space_id"] = json!(space_id(s));
        *summary.entry(census_row(s).flags.key()).or_insert(0usize) += 1;
        rows.push(v);
    }
    let text = format!("{} spaces classified", rows.len());
    Ok(Outcome::pass(json!({ "spaces": rows, "summary": summary }), text))
}

fn census(group: &str, carrier: usize, budget: u64, max: usize, inputs: &mut Value, out: &mut dyn Write) -> CliResult<Outcome> {
    let g = resolve::group(group, max)?;
    *inputs = json!({ "group": { "name": group, "order": g.order() }, "carrier": carrier, "budget": budget });
    let c = enumerate::census(&g, carrier, limits(budget))?;
    for row in &c.rows {
        emit_line(out, &json!(row));
    }
    let summary = format!("{} spaces; {} distributive transitive, all classified", c.rows.len(), c.classified);
    let results = json!({
        "group_order": c.group_order,
        "carrier": c.carrier,
        "total": c.rows.len(),
        "summary": c.summary,
        "classified": c.classified,
    });
    Ok(Outcome::pass(results, summary))
}

fn refutation(e: Error, witness: Value) -> CliError {
    let mut err = CliError::from(e);
    if err.witness.is_none() {
        err.witness = Some(witness);
    }
    err
}

#[allow(clippy::too_many_arguments)]
fn verify_thm1(
    target: &Target,
    enumerate: bool,
    carrier: usize,
    point: Option<&str>,
    all_bases: bool,
    budget: u64,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    inputs["all_bases"] = json!(all_bases);
    let Some(spaces) = target_spaces(target, enumerate, carrier, budget, max, inputs)? else {
        // round trip over the coset spaces of every normal subgroup
        let g = resolve::group(target.group.as_deref().expect("group given"), max)?;
        let mut rows = Vec::new();
        for h in g.normal_subgroups() {
            let s = binact_core::gallery::coset_action(&g, &h)?;
            let bases: Vec<usize> = if all_bases { (0..s.carrier_size()).collect() } else { vec![0] };
            for base in bases {
                let c = classify_transitive_distributive(&s, base).map_err(|e| refutation(e, space_witness(&s)))?;
                if c.subgroup != h {
                    return Err(refutation(
                        Error::Refuted(format!(
                            "G|H with H={:?} classified with subgroup {:?}",
                            h.members(),
                            c.subgroup.members()
                        )),
                        space_witness(&s),
                    ));
                }
                rows.push(json!({
                    "subgroup": subgroup_json(&g, &h),
                    "base": base,
                    "recovered": subgroup_json(&g, &c.subgroup),
                    "map": c.map,
                }));
            }
        }
        let summary = format!("{} normal-subgroup round trips recovered H", rows.len());
        return Ok(Outcome::pass(json!({ "round_trips": rows }), summary));
    };
    let single = target.space.is_some();
    let mut rows = Vec::new();
    let mut skipped = 0;
    for s in &spaces {
        if !single && !(s.is_distributive() && s.is_transitive()) {
            skipped += 1;
            continue;
        }
        let bases: Vec<usize> = match (point, all_bases) {
            (_, true) => (0..s.carrier_size()).collect(),
            (Some(p), false) => vec![resolve::point(s, p, "--point")?],
            (None, false) => vec![0],
        };
        for base in bases {
            let c = match classify_transitive_distributive(s, base) {
                Ok(c) => c,
                // a named space that is not transitive or distributive is an input error
                Err(e @ (Error::NotTransitive { .. } | Error::NotDistributive { .. })) if single => return Err(e.into()),
                Err(e) => return Err(refutation(e, space_witness(s))),
            };
            rows.push(json!({
                "space_id": space_id(s),
                "base": base,
                "subgroup": subgroup_json(s.group(), &c.subgroup),
                "map": c.map,
            }));
        }
    }
    let summary = format!("{} classifications verified, {} spaces skipped (not distributive transitive)", rows.len(), skipped);
    Ok(Outcome::pass(json!({ "classified": rows, "skipped": skipped }), summary))
}

fn verify_thm2(
    target: &Target,
    enumerate: bool,
    carrier: usize,
    budget: u64,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    let spaces = match target_spaces(target, enumerate, carrier, budget, max, inputs)? {
        Some(s) => s,
        None => {
            let g = resolve::group(target.group.as_deref().expect("group given"), max)?;
            vec![standard_distributive_action(&g)]
        }
    };
    let single = spaces.len() == 1 && !enumerate;
    let mut rows = Vec::new();
    let mut skipped = 0;
    for s in &spaces {
        if !single && !(s.is_free() && s.is_transitive() && s.is_distributive()) {
            skipped += 1;
            continue;
        }
        let f = match verify_theorem2(s) {
            Ok(f) => f,
            Err(e @ (Error::NotFree { .. } | Error::NotTransitive { .. } | Error::NotDistributive { .. })) if single => {
                return Err(e.into())
            }
            Err(e) => return Err(refutation(e, space_witness(s))),
        };
        let eta = standard_distributive_action(s.group());
        let verified = is_biequimorphism(s, &eta, &f.map)?;
        if !verified {
            return Err(refutation(Error::Refuted("map to the model space is not a biequimorphism".into()), space_witness(s)));
        }
        rows.push(json!({ "space_id": space_id(s), "map": f }));
    }
    let summary = format!("{} spaces identified with the model space, {} skipped", rows.len(), skipped);
    Ok(Outcome::pass(json!({ "identified": rows, "skipped": skipped }), summary))
}

fn verify_prop2_cmd(group: &str, subgroups: &[String], budget: u64, max: usize, inputs: &mut Value) -> CliResult<Outcome> {
    let g = resolve::group(group, max)?;
    *inputs = json!({ "group": { "name": group, "order": g.order() }, "budget": budget });
    let pairs: Vec<(Subgroup, Subgroup)> = match subgroups {
        [] => {
            let normals = g.normal_subgroups();
            normals
                .iter()
                .flat_map(|h| normals.iter().map(move |k| (h.clone(), k.clone())))
                .collect()
        }
        [h, k] => {
            let parse = |s: &str| subgroup_by_members(&g, s).map_err(|e| CliError::from(e).for_flag("--subgroup"));
            inputs["subgroups"] = json!([h, k]);
            vec![(parse(h)?, parse(k)?)]
        }
        _ => return Err(CliError::input("give --subgroup exactly twice (H then K), or not at all").for_flag("--subgroup")),
    };
    let mut rows = Vec::new();
    for (h, k) in &pairs {
        let o = verify_prop2(&g, h, k, budget).map_err(|e| {
            refutation(
                e,
                json!({ "h": subgroup_json(&g, h), "k": subgroup_json(&g, k) }),
            )
        })?;
        rows.push(json!({
            "h": subgroup_json(&g, h),
            "k": subgroup_json(&g, k),
            "h_subset_k": o.h_subset_k,
            "maps_found": o.maps_found,
            "projection": o.projection,
        }));
    }
    let summary = format!("{} ordered pairs agree: a map exists exactly when H is inside K", rows.len());
    Ok(Outcome::pass(json!({ "pairs": rows }), summary))
}

#[allow(clippy::too_many_arguments)]
fn verify_implications(
    target: &Target,
    carrier: usize,
    random: usize,
    no_census: bool,
    seed: u64,
    budget: u64,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    inputs["seed"] = json!(seed);
    inputs["random"] = json!(random);
    let mut spaces = if target.space.is_some() || !no_census {
        target_spaces(target, true, carrier, budget, max, inputs)?.expect("enumeration requested")
    } else {
        Vec::new()
    };
    let enumerated = spaces.len();
    if random > 0 {
        let name = target
            .group
            .as_deref()
            .ok_or_else(|| CliError::input("random spaces need --group").for_flag("--random"))?;
        let g = resolve::group(name, max)?;
        inputs["group"] = json!({ "name": name, "order": g.order() });
        inputs["carrier"] = json!(carrier);
        spaces.extend(enumerate::seeded_random_actions(&g, carrier, random, seed, limits(budget))?);
    }
    let mut violations = Vec::new();
    for (i, s) in spaces.iter().enumerate() {
        let p = seeded_permutation(s.carrier_size(), seed, i as u64);
        let found: Vec<_> = implication_violations(s)
            .into_iter()
            .chain(relabeling_violations(s, &p)?)
            .collect();
        for v in found {
            violations.push(json!({ "space": space_witness(s), "violation": v }));
        }
    }
    let results = json!({
        "spaces_checked": spaces.len(),
        "enumerated": enumerated,
        "random": spaces.len() - enumerated,
        "violations": violations,
    });
    let summary = format!("{} spaces, {} violations", spaces.len(), violations.len());
    Ok(Outcome::judged(results, !violations.is_empty(), summary))
}

fn gallery(
    action: GalleryAction,
    space: Option<&str>,
    output: Option<&std::path::Path>,
    max: usize,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    inputs["action"] = json!(format!("{action:?}").to_lowercase());
    if action == GalleryAction::List {
        let examples = ["z5", "s3", "dihedral:5", "coset:s3:3", "eta:z4", "zwin:50"];
        let results = json!({ "spaces": SPACE_NAMES, "examples": examples });
        return Ok(Outcome::pass(results, format!("{} space families", SPACE_NAMES.len())));
    }
    let name = space.expect("clap requires --space");
    inputs["space"] = json!(name);
    let resolved = registry::space_by_name(name).map_err(|e| CliError::from(e).for_flag("--space"))?;
    match (action, resolved) {
        (GalleryAction::Construct, GallerySpace::Finite(s)) => {
            if s.group().order() > max {
                return Err(CliError::input(format!("group order {} exceeds --max-order {max}", s.group().order())).for_flag("--space"));
            }
            let g = s.group();
            let results = json!({
                "group_order": g.order(),
                "group_elements": (0..g.order()).map(|a| g.name(a)).collect::<Vec<_>>(),
                "carrier": s.carrier_size(),
                "labels": (0..s.carrier_size()).map(|x| s.label(x)).collect::<Vec<_>>(),
                "flags": flags_json(&s),
                "steps": binact_core::orbit::all_steps(&s),
            });
            Ok(Outcome::pass(results, format!("{name}: {} points", s.carrier_size())))
        }
        (GalleryAction::Construct, GallerySpace::Windowed(w)) => Ok(Outcome::pass(
            describe_windowed(name, &w),
            format!("{name}: window of {} integers", w.carrier_size()),
        )),
        (GalleryAction::Export, GallerySpace::Finite(s)) => {
            if let Some(path) = output {
                std::fs::write(path, action_to_json(&s)? + "\n").map_err(|e| CliError::from(Error::Io(e)).for_flag("--output"))?;
                inputs["output"] = json!(path.display().to_string());
            }
            Ok(Outcome::pass(
                json!({ "action": ActionFile::from_space(&s) }),
                format!("{name} exported"),
            ))
        }
        (GalleryAction::Export, GallerySpace::Windowed(w)) => windowed_export(name, &w, output.is_some()),
        (GalleryAction::List, _) => unreachable!("handled above"),
    }
}

fn windowed_export(name: &str, w: &WindowedIntSpace, wants_file: bool) -> CliResult<Outcome> {
    if wants_file {
        return Err(CliError::input("the windowed integers have no finite action file").for_flag("--output"));
    }
    Ok(Outcome::pass(
        json!({ "description": describe_windowed(name, w) }),
        format!("{name}: description only, the group is infinite"),
    ))
}

struct ContinuumParams {
    dim: usize,
    samples: usize,
    reach_samples: usize,
    seed: u64,
    tol_axiom: f64,
    tol_reach: f64,
    half_width: f64,
}

fn continuum(
    action: ContinuumAction,
    p: &ContinuumParams,
    target: Option<&str>,
    k: Option<usize>,
    inputs: &mut Value,
) -> CliResult<Outcome> {
    *inputs = json!({
        "action": format!("{action:?}").to_lowercase(),
        "dim": p.dim,
        "seed": p.seed,
        "tol_axiom": p.tol_axiom,
        "tol_reach": p.tol_reach,
        "half_width": p.half_width,
    });
    if p.dim == 0 {
        return Err(CliError::input("dimension must be at least 1").for_flag("--dim"));
    }
    for (flag, tol) in [("--tol-axiom", p.tol_axiom), ("--tol-reach", p.tol_reach)] {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::input(format!("tolerance must be positive and finite, got {tol}")).for_flag(flag));
        }
    }
    let a = EuclideanAction::with_tolerances(p.dim, p.tol_axiom, p.tol_reach);
    match action {
        ContinuumAction::Axioms => {
            inputs["samples"] = json!(p.samples);
            let r = a.check_axioms_sampled(p.samples, p.seed, p.half_width);
            let summary = format!(
                "max identity residual {:.2e}, max composition residual {:.2e} over {} samples",
                r.identity_max, r.composition_max, r.samples
            );
            Ok(Outcome::judged(json!(r), !r.pass, summary))
        }
        ContinuumAction::Reach => {
            let text = target.ok_or_else(|| CliError::input("reach needs a target vector").for_flag("--target"))?;
            let z: Vec<f64> = text
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::input(format!("`{text}`: {e}")).for_flag("--target"))?;
            inputs["target"] = json!(z);
            let term = a.reach(&z).map_err(|e| CliError::from(e).for_flag("--target"))?;
            let value = a.eval(&term);
            let error = value.iter().zip(&z).fold(0.0f64, |m, (u, v)| m.max((u - v).abs()));
            let depth = term.depth();
            let refuted = error >= p.tol_reach || depth > p.dim;
            let summary = format!("reached with error {error:.2e} at depth {depth}");
            Ok(Outcome::judged(
                json!({ "term": term, "value": value, "error": error, "depth": depth }),
                refuted,
                summary,
            ))
        }
        ContinuumAction::Witness => {
            inputs["samples"] = json!(p.samples);
            inputs["reach_samples"] = json!(p.reach_samples);
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=p.dim).collect(),
            };
            let mut reports = Vec::new();
            let mut refuted = false;
            for k in ks {
                let w = a
                    .subspace_witness(k, p.samples, p.reach_samples, p.seed, p.half_width)
                    .map_err(|e| CliError::from(e).for_flag("--k"))?;
                refuted |= !(w.inclusion_pass && w.reach_pass);
                reports.push(w);
            }
            let summary = format!("{} subspace witnesses, {}", reports.len(), if refuted { "some failed" } else { "all hold" });
            Ok(Outcome::judged(json!({ "subspaces": reports }), refuted, summary))
        }
    }
}

fn translate(name: &str, point: &str, to: Option<&str>, max: usize, inputs: &mut Value) -> CliResult<Outcome> {
    inputs["space"] = json!(name);
    let s = resolve::finite_space(name, max)?;
    let from = resolve::point(&s, point, "--point")?;
    inputs["space"] = describe_space(name, &s);
    inputs["point"] = json!(s.label(from));
    let report = orbit(&s, from)?;
    let targets: Vec<usize> = match to {
        Some(t) => {
            let t = resolve::point(&s, t, "--to")?;
            inputs["to"] = json!(s.label(t));
            vec![t]
        }
        None => report.orbit().iter().collect(),
    };
    let g = s.group();
    let mut rows = Vec::new();
    for t in targets {
        let tr = match translation_from_report(&s, &report, t) {
            Ok(tr) => tr,
            Err(e @ Error::NotInOrbit { .. }) => return Err(CliError::from(e).for_flag("--to")),
            Err(e) => return Err(refutation(e, space_witness(&s))),
        };
        rows.push(json!({
            "to": s.label(t),
            "depth": tr.depth(),
            "factors": tr.factors.iter().map(|f| json!({ "g": g.name(f.g), "anchor": s.label(f.anchor) })).collect::<Vec<_>>(),
            "trail": tr.trail.iter().map(|&p| s.label(p)).collect::<Vec<_>>(),
            "map": tr.map,
            "verified": tr.verify(&s),
        }));
    }
    let summary = format!("{} translations from {} verified", rows.len(), s.label(from));
    Ok(Outcome::pass(json!({ "from": s.label(from), "translations": rows }), summary))
}
