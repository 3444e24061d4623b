use cremona_core::arith::JsonInt;
use cremona_core::baselocus::{chamber_signature_with, expected_dimension_with, weyl_base_locus_with, ChamberSignature};
use cremona_core::cones::{ck_generators, dk_inequalities, verify_strong_duality, DualityReport};
use cremona_core::cycles::{containment, join_cycle_degrees, joins_of_dimension, kappa, sweeping_curve, weyl_cycle_witness, Join, WeylPlanes};
use cremona_core::gale::{
    gale_cone_cross_check, gale_image_classification_with, generator_identities, has_kind, random_surface_classes,
    surface_space, verify_equivariance, GaleMap, LineCatalogs, SurfaceDivisor, SurfaceKind,
};
use cremona_core::oracle::{dimension_table_mod, multiplicity_vectors, system_dimension, InterpolationProblem, TableMode};
use cremona_core::weyl::{
    cremona_curve, cremona_divisor, cremona_reduce, degrees_strictly_increase, effective_orbit, recursion_certificate,
    recursion_chain, sha256_hex, Certificate, CremonaIndexSet, OrbitCatalog, OrbitClass,
};
use cremona_core::{CurveClass, DivisorClass, Error, Result, Space};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write;

use crate::config::RunConfig;
use crate::output::Report;
use crate::{Command, GaleCommand, OracleCommand};

fn parse_class<C: OrbitClass + serde::de::DeserializeOwned>(space: Space, text: &str) -> Result<C> {
    let text = text.trim();
    let class: C = if text.starts_with('{') {
        serde_json::from_str(text)?
    } else {
        let (d, m) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"d;m1,...,ms\", got {text:?}")))?;
        let parse = |t: &str| t.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {:?}", t.trim())));
        let m = if m.trim().is_empty() { Vec::new() } else { m.split(',').map(parse).collect::<Result<_>>()? };
        if m.len() != space.s {
            return Err(Error::LengthMismatch { expected: space.s, got: m.len() });
        }
        C::from_parts(space, parse(d)?, m)?
    };
    space.check_same(&class.space())?;
    Ok(class)
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not an index: {t:?}"))))
        .collect()
}

fn parse_surface(text: &str) -> Result<SurfaceDivisor> {
    let text = text.trim();
    if text.starts_with('{') {
        SurfaceDivisor::from_json(&serde_json::from_str(text)?)
    } else {
        SurfaceDivisor::from_divisor(&parse_class::<DivisorClass>(surface_space(), text)?)
    }
}

fn orbit_of<C: OrbitClass>(cfg: &RunConfig, seed: &C) -> Result<OrbitCatalog<C>> {
    match &cfg.cache {
        Some(cache) => {
            let (cat, hit) = cache.orbit(seed, cfg.degree_bound)?;
            eprintln!("catalog {} {}", if hit { "loaded from" } else { "stored in" }, cache.dir().display());
            Ok(cat)
        }
        None => effective_orbit(seed, cfg.degree_bound),
    }
}

fn planes(cfg: &RunConfig, space: Space) -> Result<WeylPlanes> {
    WeylPlanes::build(space, cfg.degree_bound)
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Classify { r } => classify(cfg, *r),
        Command::Orbit { curve: Some(c), .. } => {
            let space = cfg.space()?;
            orbit(cfg, &parse_class::<CurveClass>(space, c)?)
        }
        Command::Orbit { divisor, .. } => {
            let space = cfg.space()?;
            let d = divisor.as_deref().ok_or_else(|| Error::Parse("give --curve or --divisor".into()))?;
            orbit(cfg, &parse_class::<DivisorClass>(space, d)?)
        }
        Command::Cremona { curve, divisor, gamma } => cremona(cfg, curve.as_deref(), divisor.as_deref(), gamma),
        Command::Reduce { divisor, max_steps } => reduce(cfg, divisor, *max_steps),
        Command::Joins { r, witness } => joins(cfg, *r, *witness),
        Command::Kappa { join, t, divisor } => kappa_cmd(cfg, join, *t, divisor),
        Command::Cones { k, extremal } => cones(cfg, *k, *extremal),
        Command::Duality { k } => duality(cfg, k),
        Command::BaseLocus { divisor } => base_locus(cfg, divisor),
        Command::Chamber { divisor, other } => chamber(cfg, divisor, other.as_deref()),
        Command::Wdim { divisor, no_oracle } => wdim(cfg, divisor, *no_oracle),
        Command::Oracle(OracleCommand::Dim { divisor }) => oracle_dim(cfg, divisor),
        Command::Oracle(OracleCommand::Table { d_max, m_max, mode }) => oracle_table(cfg, *d_max, *m_max, mode),
        Command::Gale(GaleCommand::Map { class, kind, map }) => gale_map(class, kind.as_deref(), map),
        Command::Gale(GaleCommand::Verify { count, range }) => gale_verify(cfg, *count, *range),
        Command::CertifyInfinite { curve, steps } => certify(cfg, curve, *steps),
    }
}

fn classify(cfg: &RunConfig, r: Option<usize>) -> Result<Report> {
    let space = cfg.space()?;
    let verdict = space.is_mori_dream()?;
    let mut text = format!(
        "{space}: {} (<-K,-K> = {})\n",
        if verdict.mori_dream { "Mori dream space" } else { "not a Mori dream space" },
        verdict.anticanonical_square
    );
    let mut result = json!({ "space": space.to_string(), "mds": verdict });
    let needs_bound = space.s >= space.n + 4 && cfg.degree_bound.is_none() && !verdict.mori_dream;
    if needs_bound {
        text.push_str("pass --degree-bound to list Weyl planes\n");
        return Ok(Report::new("classify", result, text));
    }
    let all = planes(cfg, space)?;
    let mut rows = Vec::new();
    let mut dims = Vec::new();
    for cat in &all.by_dim {
        if r.is_some_and(|r| r != cat.r) {
            continue;
        }
        writeln!(text, "r = {}: {} Weyl planes{}", cat.r, cat.planes.len(), if cat.complete { "" } else { " (incomplete)" }).ok();
        for p in &cat.planes {
            if r.is_some() {
                writeln!(text, "  {}", p.sweeping_curve).ok();
            }
            rows.push(vec![cat.r.to_string(), p.sweeping_curve.to_string(), serde_json::to_string(&p.source)?]);
        }
        dims.push(json!({
            "r": cat.r,
            "count": cat.planes.len(),
            "complete": cat.complete,
            "planes": if r.is_some() { Value::from(cat.planes.iter().map(|p| p.to_json()).collect::<Vec<_>>()) } else { Value::Null },
        }));
    }
    if let Some(r) = r {
        if dims.is_empty() {
            return Err(Error::InvalidBound(format!("r = {r} outside 1..{}", space.n - 1)));
        }
    }
    result["weyl_planes"] = dims.into();
    result["complete"] = all.complete().into();
    Ok(Report::new("classify", result, text).hash(all.version_hash()).table(&["r", "curve", "source"], rows))
}

fn orbit<C: OrbitClass>(cfg: &RunConfig, seed: &C) -> Result<Report> {
    let cat = orbit_of(cfg, seed)?;
    let mut text = format!(
        "{} elements, {}\n",
        cat.len(),
        if cat.complete { "complete" } else { "incomplete" }
    );
    let mut rows = Vec::new();
    for e in &cat.elements {
        let word = serde_json::to_string(&e.witness)?;
        writeln!(text, "  {}  {}", e.class, word).ok();
        rows.push(vec![e.class.to_string(), word]);
    }
    let result = json!({
        "kind": C::KIND,
        "seed": seed.to_string(),
        "count": cat.len(),
        "complete": cat.complete,
        "degree_bound": cat.degree_bound,
        "permutation_classes": cat.permutation_classes(),
        "boundary_count": cat.boundary_count,
        "truncated": cat.truncated,
        "elements": cat.elements.iter().map(|e| json!({"class": e.class.to_string(), "witness": e.witness})).collect::<Vec<_>>(),
    });
    Ok(Report::new("orbit", result, text).hash(cat.version_hash()).table(&["class", "witness"], rows))
}

fn cremona(cfg: &RunConfig, curve: Option<&str>, divisor: Option<&str>, gamma: &str) -> Result<Report> {
    let space = cfg.space()?;
    let g = CremonaIndexSet::from_one_based(space, &parse_indices(gamma)?)?;
    let (input, image, back, coeff, coeff_name) = match (curve, divisor) {
        (Some(c), _) => {
            let c = parse_class::<CurveClass>(space, c)?;
            let (img, a) = cremona_curve(&c, &g)?;
            let back = cremona_curve(&img, &g)?.0;
            (c.to_string(), img.to_string(), back == c, a, "a_gamma")
        }
        (None, Some(d)) => {
            let d = parse_class::<DivisorClass>(space, d)?;
            let (img, b) = cremona_divisor(&d, &g)?;
            let back = cremona_divisor(&img, &g)?.0;
            (d.to_string(), img.to_string(), back == d, b, "b_gamma")
        }
        (None, None) => return Err(Error::Parse("give --curve or --divisor".into())),
    };
    let result = json!({
        "input": input,
        "gamma": g.one_based(),
        "image": image,
        coeff_name: JsonInt(coeff.clone()),
        "involution": back,
    });
    let text = format!("{image}\n{coeff_name} = {coeff}\n");
    Ok(Report::new("cremona", result, text).verified(back))
}

fn reduce(cfg: &RunConfig, divisor: &str, max_steps: usize) -> Result<Report> {
    let d = parse_class::<DivisorClass>(cfg.space()?, divisor)?;
    let red = cremona_reduce(&d, max_steps)?;
    if !red.reduced {
        return Err(Error::ResourceCap(format!("{d} not reduced after {max_steps} moves")));
    }
    let result = json!({
        "input": d.to_string(),
        "reduced": red.class.to_string(),
        "steps": red.word.len(),
        "word": red.word,
    });
    let text = format!("{}\n{} moves\n", red.class, red.word.len());
    Ok(Report::new("reduce", result, text))
}

fn join_label(j: &Join) -> String {
    j.to_string()
}

fn joins(cfg: &RunConfig, r: usize, witness: bool) -> Result<Report> {
    let space = cfg.space()?;
    if r + 1 > space.n {
        return Err(Error::InvalidBound(format!("r = {r} outside 0..{}", space.n - 1)));
    }
    let list = joins_of_dimension(space, r);
    let mut text = format!("{} joins of dimension {r}\n", list.len());
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for j in &list {
        let c = sweeping_curve(j);
        let deg = join_cycle_degrees(j);
        let mut item = json!({
            "join": j.to_json(),
            "label": join_label(j),
            "sweeping_curve": c.to_string(),
            "degrees": deg.to_json(),
        });
        let mut line = format!("  {}  curve {}", j, c);
        if witness {
            let w = weyl_cycle_witness(j)?;
            let divs: Vec<String> = w.divisors.iter().map(|d| d.divisor().to_string()).collect();
            write!(line, "  cut by {}", divs.join(" | ")).ok();
            item["witness_divisors"] = json!(divs);
        }
        writeln!(text, "{line}").ok();
        rows.push(vec![join_label(j), c.to_string(), deg.hr_degree.to_string()]);
        items.push(item);
    }
    let result = json!({ "space": space.to_string(), "r": r, "joins": items });
    Ok(Report::new("joins", result, text).table(&["join", "sweeping_curve", "hr_degree"], rows))
}

fn kappa_cmd(cfg: &RunConfig, join: &str, t: usize, divisor: &str) -> Result<Report> {
    let space = cfg.space()?;
    let j = Join::from_one_based(space, &parse_indices(join)?, t)?;
    let d = parse_class::<DivisorClass>(space, divisor)?;
    let k = kappa(&j, &d)?;
    let contained = containment(&j, &d)?;
    let result = json!({
        "join": j.to_json(),
        "divisor": d.to_string(),
        "kappa": JsonInt(k.clone()),
        "containment": JsonInt(contained.clone()),
        "orthogonal": k == 0.into(),
    });
    let text = format!("kappa = {k}\ncontainment = {contained}\n");
    Ok(Report::new("kappa", result, text))
}

fn cones(cfg: &RunConfig, k: usize, extremal: bool) -> Result<Report> {
    let space = cfg.space()?;
    let (mut report, cone) = ck_generators(space, k, cfg.degree_bound)?;
    if extremal {
        report.mark_extremal(&cone)?;
    }
    let mut result = report.to_json();
    if space.s == space.n + 3 {
        let ineq = dk_inequalities(space, k)?;
        result["dk_inequalities"] = json!(ineq.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    let mut text = format!(
        "C_{k} on {space}: {} orbits, {} generators{}\n",
        report.total_orbits(),
        report.generators.len(),
        if report.complete { "" } else { " (incomplete)" }
    );
    for c in &report.counts {
        writeln!(text, "  {}: {} orbits, {} classes", c.seed, c.orbits, c.classes).ok();
    }
    let rows = report
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let ext = report.extremal.as_ref().map(|e| e[i].to_string()).unwrap_or_default();
            vec![g.to_string(), ext]
        })
        .collect();
    Ok(Report::new("cones", result, text).hash(report.version_hash()).table(&["generator", "extremal"], rows))
}

fn duality(cfg: &RunConfig, ks: &[usize]) -> Result<Report> {
    let space = cfg.space()?;
    let ks: Vec<usize> = if !ks.is_empty() {
        ks.to_vec()
    } else if space.s == space.n + 3 {
        (0..space.n).collect()
    } else {
        vec![0, 1]
    };
    let reports: Vec<DualityReport> =
        ks.par_iter().map(|&k| verify_strong_duality(space, k, cfg.degree_bound)).collect::<Result<_>>()?;
    let all = reports.iter().all(|r| r.equal);
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        writeln!(
            text,
            "k = {}: {} ({} generators of C_k, {} of the dual)",
            r.k,
            if r.equal { "equal" } else { "NOT equal" },
            r.ck_generators,
            r.dual_generators
        )
        .ok();
        for c in &r.not_in_dual {
            writeln!(text, "  in C_k only: {c}").ok();
        }
        for c in &r.not_in_ck {
            writeln!(text, "  in dual only: {c}").ok();
        }
        rows.push(vec![r.k.to_string(), r.equal.to_string(), r.ck_generators.to_string(), r.dual_generators.to_string()]);
    }
    let result = json!({
        "space": space.to_string(),
        "all_equal": all,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    let joined: Vec<&str> = reports.iter().map(|r| r.catalog_hash.as_str()).collect();
    Ok(Report::new("duality", result, text)
        .hash(sha256_hex(joined.join("|").as_bytes()))
        .table(&["k", "equal", "ck_generators", "dual_generators"], rows)
        .verified(all))
}

fn base_locus(cfg: &RunConfig, divisor: &str) -> Result<Report> {
    let space = cfg.space()?;
    let d = parse_class::<DivisorClass>(space, divisor)?;
    let all = planes(cfg, space)?;
    let bl = weyl_base_locus_with(&d, &all)?;
    let mut text = if bl.is_empty() {
        "empty Weyl base locus\n".to_string()
    } else {
        format!("{} components\n", bl.components.len())
    };
    let mut rows = Vec::new();
    for (p, k) in &bl.components {
        writeln!(text, "  r = {}  curve {}  multiplicity {k}", p.r, p.sweeping_curve).ok();
        rows.push(vec![p.r.to_string(), p.sweeping_curve.to_string(), k.to_string()]);
    }
    if !bl.complete {
        text.push_str("plane catalog incomplete\n");
    }
    Ok(Report::new("base-locus", bl.to_json(), text)
        .hash(bl.catalog_hash.clone())
        .table(&["r", "curve", "multiplicity"], rows))
}

fn chamber(cfg: &RunConfig, divisor: &str, other: Option<&str>) -> Result<Report> {
    let space = cfg.space()?;
    let all = planes(cfg, space)?;
    let d = parse_class::<DivisorClass>(space, divisor)?;
    let sig = chamber_signature_with(&d, &all)?;
    let rows = |s: &ChamberSignature| s.signs.iter().map(|(c, x)| vec![c.to_string(), x.to_string()]).collect::<Vec<_>>();
    let mut text = format!("{}\n", sig.sign_string());
    let mut result = json!({ "signature": sig.to_json() });
    if let Some(o) = other {
        let e = parse_class::<DivisorClass>(space, o)?;
        let sig2 = chamber_signature_with(&e, &all)?;
        let same = sig.signs.iter().map(|x| x.1).eq(sig2.signs.iter().map(|x| x.1));
        writeln!(text, "{}\n{}", sig2.sign_string(), if same { "same chamber" } else { "different chambers" }).ok();
        result["other"] = sig2.to_json();
        result["same_chamber"] = same.into();
    }
    let table = rows(&sig);
    Ok(Report::new("chamber", result, text).hash(all.version_hash()).table(&["curve", "sign"], table))
}

fn wdim(cfg: &RunConfig, divisor: &str, no_oracle: bool) -> Result<Report> {
    let space = cfg.space()?;
    let d = parse_class::<DivisorClass>(space, divisor)?;
    let all = planes(cfg, space)?;
    let exp = expected_dimension_with(&d, &all)?;
    let mut result = exp.to_json();
    let mut text = format!("wdim {}", exp.wdim.value);
    let mut ok = true;
    if !no_oracle {
        let mut prob = InterpolationProblem::from_divisor(&d, cfg.seed)?;
        prob.prime = cfg.prime;
        let res = system_dimension(&prob)?;
        ok = res.stable && exp.value == res.dimension.into();
        write!(text, ", oracle {}, {}", res.dimension, if ok { "match" } else { "mismatch" }).ok();
        result["oracle"] = res.to_json();
        result["match"] = ok.into();
    }
    text.push('\n');
    if let Some(reason) = &exp.gate.empty {
        writeln!(text, "empty: {reason}").ok();
    }
    Ok(Report::new("wdim", result, text).hash(all.version_hash()).verified(ok))
}

fn oracle_dim(cfg: &RunConfig, divisor: &str) -> Result<Report> {
    let d = parse_class::<DivisorClass>(cfg.space()?, divisor)?;
    let mut prob = InterpolationProblem::from_divisor(&d, cfg.seed)?;
    prob.prime = cfg.prime;
    let res = system_dimension(&prob)?;
    let mut result = res.to_json();
    result["divisor"] = d.to_string().into();
    let text = format!(
        "dimension {}{}\n",
        res.dimension,
        if res.stable { "" } else { " (seeds disagree)" }
    );
    Ok(Report::new("oracle dim", result, text).verified(res.stable))
}

fn oracle_table(cfg: &RunConfig, d_max: u32, m_max: u32, mode: &str) -> Result<Report> {
    let space = cfg.space()?;
    if d_max == 0 || m_max == 0 {
        return Err(Error::InvalidBound("--d-max and --m-max must be positive".into()));
    }
    let mode: TableMode = mode.parse()?;
    let vecs = multiplicity_vectors(space.s, m_max, mode);
    let problems: Vec<(u32, Vec<u32>)> = (1..=d_max).flat_map(|d| vecs.iter().map(move |m| (d, m.clone()))).collect();
    let table = dimension_table_mod(space, &problems, cfg.seed, cfg.prime, cfg.degree_bound)?;
    let mismatches = table.mismatches().count();
    let text = format!(
        "{} rows, {} mismatches, {} unstable\n{}",
        table.rows.len(),
        mismatches,
        table.unstable().count(),
        table
            .mismatches()
            .map(|r| format!("  {}: oracle {}, expected {}\n", r.divisor(space), r.oracle, r.expected))
            .collect::<String>()
    );
    let rows = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.divisor(space).to_string(),
                r.oracle.to_string(),
                r.stable.to_string(),
                r.chi.to_string(),
                r.wdim.to_string(),
                r.expected.to_string(),
                r.matches.to_string(),
            ]
        })
        .collect();
    Ok(Report::new("oracle table", table.to_json(), text)
        .hash(table.catalog_hash.clone())
        .table(&["divisor", "oracle", "stable", "chi", "wdim", "expected", "match"], rows)
        .verified(table.all_match()))
}

fn catalogs_hash(c: &LineCatalogs) -> String {
    let parts = [&c.minus_one, &c.zero, &c.one, &c.exceptional, &c.conic].map(|x| x.version_hash());
    sha256_hex(parts.join("|").as_bytes())
}

fn gale_map(class: &str, kind: Option<&str>, map: &str) -> Result<Report> {
    let w = parse_surface(class)?;
    let kind = match kind {
        Some(k) => k.parse::<SurfaceKind>()?,
        None => [SurfaceKind::MinusOne, SurfaceKind::Zero, SurfaceKind::One]
            .into_iter()
            .find(|k| has_kind(&w, *k))
            .ok_or_else(|| Error::KindMismatch(format!("{w} is not a (-1)-, (0)- or (1)-class")))?,
    };
    let map: GaleMap = map.parse()?;
    let catalogs = LineCatalogs::build()?;
    let img = gale_image_classification_with(&catalogs, kind, &w, map)?;
    let text = format!("{}  {:?}\n", img.image, img.label);
    Ok(Report::new("gale map", img.to_json(), text).hash(catalogs_hash(&catalogs)))
}

fn gale_verify(cfg: &RunConfig, count: usize, range: i64) -> Result<Report> {
    let ids = generator_identities()?;
    let ids_ok = ids.iter().all(|(_, ok)| *ok);
    let classes = random_surface_classes(cfg.seed, count, range);
    let eq = verify_equivariance(&classes)?;
    let catalogs = LineCatalogs::build()?;
    let cone = gale_cone_cross_check(&catalogs)?;
    let ok = ids_ok && eq.failures.is_empty() && cone.holds();
    let result = json!({
        "identities": ids.iter().map(|(name, ok)| json!({"identity": name, "holds": ok})).collect::<Vec<_>>(),
        "equivariance": {
            "checked": eq.checked,
            "failures": eq.failures.iter().map(|(w, t)| json!({"class": w.to_json(), "triple": t})).collect::<Vec<_>>(),
        },
        "cone_cross_check": {
            "minus_one_to_zero_lines": cone.minus_one_to_zero_lines,
            "one_to_one_lines": cone.one_to_one_lines,
            "zero_to_exceptional": cone.zero_to_exceptional,
            "counts": cone.counts,
        },
    });
    let text = format!(
        "identities: {}/{} hold\nequivariance: {} checks, {} failures\ncone cross-check: {}\n",
        ids.iter().filter(|x| x.1).count(),
        ids.len(),
        eq.checked,
        eq.failures.len(),
        if cone.holds() { "holds" } else { "fails" }
    );
    Ok(Report::new("gale verify", result, text).hash(catalogs_hash(&catalogs)).verified(ok))
}

fn certify(cfg: &RunConfig, curve: &str, steps: usize) -> Result<Report> {
    let c = parse_class::<CurveClass>(cfg.space()?, curve)?;
    if let Certificate::Unavailable { reason } = recursion_certificate(&c)? {
        return Err(Error::Unsupported(reason));
    }
    let (chain, holds) = recursion_chain(&c, steps)?;
    let increasing = degrees_strictly_increase(&chain);
    let ok = holds && increasing && chain.len() == steps + 1;
    let mut items = Vec::new();
    let mut text = String::new();
    for x in &chain {
        let cert = recursion_certificate(x)?;
        let info = match &cert {
            Certificate::Satisfies { branch, excluded, witness, .. } => json!({
                "branch": branch,
                "excluded": excluded,
                "witness": witness.one_based(),
            }),
            _ => Value::Null,
        };
        writeln!(text, "{x}").ok();
        items.push(json!({ "class": x.to_string(), "certificate": info }));
    }
    writeln!(
        text,
        "{} steps, degrees {}, hypothesis {}",
        chain.len() - 1,
        if increasing { "strictly increasing" } else { "not increasing" },
        if holds { "holds throughout" } else { "fails" }
    )
    .ok();
    let result = json!({
        "start": c.to_string(),
        "steps": chain.len() - 1,
        "increasing": increasing,
        "hypothesis_holds": holds,
        "chain": items,
    });
    Ok(Report::new("certify-infinite", result, text).verified(ok))
}
