use nielsen_core::circle::{fiber_type, lie_group_nielsen, looseness_report, CircleMapPairClass, LieGroupNielsen, LieTarget};
use nielsen_core::data::DATA_DIR_ENV;
use nielsen_core::immersion::FramedImmersion;
use nielsen_core::orientation::{
    class_coefficients, coefficient_group_abelian, AbelianOrientationData, Coefficients, FiniteOrientationData,
};
use nielsen_core::reidemeister::{
    nielsen_upper_bound, reidemeister_abelian, reidemeister_orbits, FiniteGroupTable, TwistedConjugacyData,
};
use nielsen_core::sphere::{
    mcc_spheres, GammaVector, InjectivityDb, MccVerdict, SphereError, StableStemTable,
};
use nielsen_core::torus::{oracle_components, TorusError, TorusMapSpec};
use nielsen_core::{Cardinality, Citation, FgAbelianGroup};
use serde_json::json;

use crate::args::{CircleArgs, ImmersionArgs, IndexArgs, OracleTorusArgs, ReidemeisterArgs, SphereArgs, TablesArgs};
use crate::input;
use crate::output::{CmdResult, InputError, Verdict};

/// Element orders up to which abelian index data is also listed class by class.
const CLASS_LISTING_LIMIT: u64 = 4096;

pub fn circle(a: &CircleArgs) -> CmdResult {
    let mut v = Verdict::new("circle");
    if let Some(lie) = &a.lie_pi1 {
        return lie_group(a, lie, v);
    }
    let z = FgAbelianGroup::integers();
    let pair = match (&a.delta, &a.f1, &a.f2) {
        (Some(d), None, None) => {
            v.echo("delta", input::json::<serde_json::Value>("delta", d)?);
            let row: Vec<i64> = input::json("delta", d)?;
            let h1 = match &a.h1 {
                Some(h) => input::group("h1", h)?,
                None => FgAbelianGroup::free(row.len()),
            };
            let delta = input::row("delta", d, &h1, &z)?;
            CircleMapPairClass::new(delta).map_err(|e| InputError::new("delta", e))?
        }
        (None, Some(f1), Some(f2)) => {
            let r1: Vec<i64> = input::json("f1", f1)?;
            let h1 = match &a.h1 {
                Some(h) => input::group("h1", h)?,
                None => FgAbelianGroup::free(r1.len()),
            };
            let f1h = input::row("f1", f1, &h1, &z)?;
            let f2h = input::row("f2", f2, &h1, &z)?;
            v.echo("f1", r1).echo("f2", input::json::<Vec<i64>>("f2", f2)?);
            let fiber = fiber_type(&f1h, &f2h).map_err(|e| InputError::new("f2", e))?;
            v.set("fiber_type", fiber.describe()).set("path_components", fiber.components().to_string());
            v.cite([Citation::CircleFiberType]);
            CircleMapPairClass::from_maps(&f1h, &f2h).map_err(|e| InputError::new("f2", e))?
        }
        _ => return Err(InputError::new("delta", "give either --delta or both --f1 and --f2")),
    };
    v.echo("h1", pair.h1().invariant_factors());
    let report = looseness_report(&pair);
    v.set("N", report.nielsen)
        .set("MCC", report.mcc)
        .set("conditions", report.conditions)
        .set("reidemeister_cardinality", report.reidemeister_cardinality)
        .cite(report.applied);
    Ok(v)
}

fn lie_group(a: &CircleArgs, lie: &str, mut v: Verdict) -> CmdResult {
    let pi1n = input::group("lie-pi1", lie)?;
    let f1 = input::required("f1", &a.f1)?;
    let f2 = input::required("f2", &a.f2)?;
    let rows: Vec<Vec<i64>> = input::json("f1", f1)?;
    let pi1m = match &a.h1 {
        Some(h) => input::group("h1", h)?,
        None => FgAbelianGroup::free(rows.first().map_or(0, Vec::len)),
    };
    let f1h = input::hom("f1", f1, &pi1m, &pi1n)?;
    let f2h = input::hom("f2", f2, &pi1m, &pi1n)?;
    v.echo("lie_pi1", pi1n.invariant_factors()).echo("h1", pi1m.invariant_factors()).echo("f1", rows);
    v.echo("f2", input::json::<serde_json::Value>("f2", f2)?);
    let target = if pi1n.is_integers() { LieTarget::Circle } else { LieTarget::Group { pi1: pi1n } };
    v.cite([Citation::LieGroupReduction, Citation::NielsenLowerBound]);
    match lie_group_nielsen(&f1h, &f2h, &target).map_err(|e| InputError::new("f1", e))? {
        LieGroupNielsen::Resolved { nielsen } => {
            v.set("N", nielsen);
            if matches!(target, LieTarget::Circle) {
                v.set("MCC", nielsen).cite([Citation::CircleTarget]);
            }
        }
        LieGroupNielsen::Dichotomy { zero_or } => {
            v.set("N", "unknown").set("N_candidates", [0, zero_or]);
            v.undecided(format!("Unknown: N is either 0 or {zero_or}; the reduction does not pick one"));
        }
    }
    Ok(v)
}

fn sphere_field(e: &SphereError, which: &'static str) -> &'static str {
    match e {
        SphereError::TargetDimension(_) => "n",
        SphereError::SourceDimension(_) | SphereError::StemUnavailable(_) => "m",
        _ => which,
    }
}

fn gamma_arg(which: &'static str, arg: &str, m: u32, n: u32, stems: &StableStemTable) -> Result<GammaVector, InputError> {
    let r = if arg.trim() == "zero" {
        GammaVector::zero(m, n, stems)
    } else {
        GammaVector::from_json(m, n, &input::text(which, arg)?, stems)
    };
    r.map_err(|e| InputError::new(sphere_field(&e, which), e))
}

pub fn sphere(a: &SphereArgs) -> CmdResult {
    let stems = StableStemTable::load().map_err(|e| InputError::new(DATA_DIR_ENV, e))?;
    let db = InjectivityDb::load().map_err(|e| InputError::new(DATA_DIR_ENV, e))?;
    let d1 = gamma_arg("d1", &a.d1, a.m, a.n, &stems)?;
    let d2 = gamma_arg("d2", &a.d2, a.m, a.n, &stems)?;
    let mut v = Verdict::new("sphere");
    v.echo("m", a.m).echo("n", a.n).echo("d1", d1.values()).echo("d2", d2.values());
    let verdict = mcc_spheres(&d1, &d2, &db).map_err(|e| InputError::new(sphere_field(&e, "d2"), e))?;
    v.set("N", verdict.nielsen)
        .set("MCC", verdict.mcc)
        .set("omega", &verdict.omega)
        .set("injectivity", &verdict.injectivity)
        .set("wecken_range", verdict.wecken_range)
        .set("explanation", &verdict.explanation)
        .cite(verdict.applied);
    for c in verdict.caveats {
        v.caveat(c);
    }
    for c in &verdict.omega.components {
        let certified = stems.entry(c.stem).is_some_and(|e| e.certified);
        if !certified {
            v.caveat(format!("stem {} is transcribed, not certified", c.stem));
        }
    }
    if verdict.mcc == MccVerdict::Unknown {
        v.unknown = true;
    }
    Ok(v)
}

/// Invariant factors when the argument is a JSON list of integers.
fn factor_list(arg: &str) -> Option<Vec<i64>> {
    let t = arg.trim_start();
    if !t.starts_with('[') {
        return None;
    }
    serde_json::from_str(t).ok()
}

fn table(field: &str, arg: &str) -> Result<FiniteGroupTable, InputError> {
    input::json(field, arg)
}

pub fn reidemeister(a: &ReidemeisterArgs) -> CmdResult {
    let mut v = Verdict::new("reidemeister");
    if let Some(target_dim) = a.target_dim {
        v.echo("target_dim", target_dim);
    }
    let card = if factor_list(&a.pi1n).is_some() {
        let pi1n = input::group("pi1n", &a.pi1n)?;
        let pi1m = input::group("pi1m", input::required("pi1m", &a.pi1m)?)?;
        let f1 = input::hom("f1", input::required("f1", &a.f1)?, &pi1m, &pi1n)?;
        let f2 = input::hom("f2", input::required("f2", &a.f2)?, &pi1m, &pi1n)?;
        v.echo("mode", "abelian").echo("pi1m", pi1m.invariant_factors()).echo("pi1n", pi1n.invariant_factors());
        v.echo("f1", &f1).echo("f2", &f2);
        let set = reidemeister_abelian(&f1, &f2).map_err(|e| InputError::new("f2", e))?;
        v.set("group", set.group.to_string());
        set.cardinality
    } else {
        let group = table("pi1n", &a.pi1n)?;
        let pairing = input::text("pairing", input::required("pairing", &a.pairing)?)?;
        v.echo("mode", "table").echo("order", group.order());
        let data = TwistedConjugacyData::from_json(group, &pairing).map_err(|e| InputError::new("pairing", e))?;
        v.echo("pairs", data.pairs());
        let orbits = reidemeister_orbits(&data);
        v.set("representatives", orbits.iter().map(|o| o[0]).collect::<Vec<_>>()).set("classes", &orbits);
        Cardinality::Finite(orbits.len() as u64)
    };
    let bound = nielsen_upper_bound(card, a.target_dim);
    v.set("cardinality", card)
        .set("mcc_upper_bound", bound.mcc_upper_bound)
        .set("summary", bound.summary)
        .cite(bound.applied)
        .cite([Citation::ReidemeisterBijection]);
    for c in bound.caveats {
        v.caveat(c);
    }
    Ok(v)
}

pub fn index(a: &IndexArgs) -> CmdResult {
    let mut v = Verdict::new("index");
    v.cite([Citation::OrientationCoefficients, Citation::ReidemeisterBijection]);
    let data = if factor_list(&a.pi1m).is_some() {
        let pi1m = input::group("pi1m", &a.pi1m)?;
        let pi1n = input::group("pi1n", &a.pi1n)?;
        let z2 = FgAbelianGroup::cyclic(2);
        let w1m = input::row("w1m", &a.w1m, &pi1m, &z2)?;
        let w1n = input::row("w1n", &a.w1n, &pi1m, &z2)?;
        let f1 = input::hom("f1", &a.f1, &pi1m, &pi1n)?;
        let f2 = input::hom("f2", &a.f2, &pi1m, &pi1n)?;
        v.echo("mode", "abelian").echo("pi1m", pi1m.invariant_factors()).echo("pi1n", pi1n.invariant_factors());
        v.echo("w1m", &w1m).echo("w1n", &w1n).echo("f1", &f1).echo("f2", &f2);
        let data = AbelianOrientationData::new(w1m, w1n, f1, f2).map_err(|e| InputError::new("f2", e))?;
        let coefficients = coefficient_group_abelian(&data);
        v.set("coefficients", coefficients);
        if let Some(theta) = a.theta {
            v.echo("theta", theta);
            if let Cardinality::Finite(order) = pi1n.order() {
                if theta as u64 >= order {
                    return Err(InputError::new("theta", format!("index {theta} is outside a group of order {order}")));
                }
            }
        }
        let small = |g: &FgAbelianGroup| g.order().finite().is_some_and(|o| o <= CLASS_LISTING_LIMIT);
        if !(small(&pi1m) && small(&pi1n)) {
            v.caveat("the coefficient group is the same for every Reidemeister class");
            return Ok(v);
        }
        FiniteOrientationData::from_abelian(&data).map_err(|e| InputError::new("pi1m", e))?
    } else {
        let pi1m = table("pi1m", &a.pi1m)?;
        let pi1n = table("pi1n", &a.pi1n)?;
        let gens: Option<Vec<usize>> = a.generators.as_deref().map(|g| input::json("generators", g)).transpose()?;
        let f1: Vec<usize> = input::json("f1", &a.f1)?;
        let f2: Vec<usize> = input::json("f2", &a.f2)?;
        let w1m: Vec<u8> = input::json("w1m", &a.w1m)?;
        let w1n: Vec<u8> = input::json("w1n", &a.w1n)?;
        v.echo("mode", "table").echo("pi1m_order", pi1m.order()).echo("pi1n_order", pi1n.order());
        v.echo("f1", &f1).echo("f2", &f2).echo("w1m", &w1m).echo("w1n", &w1n);
        if let Some(g) = &gens {
            v.echo("generators", g);
        }
        FiniteOrientationData::from_generators(pi1m, pi1n, gens, &f1, &f2, &w1m, &w1n)
            .map_err(|e| InputError::new("f1", e))?
    };

    let classes = class_coefficients(&data);
    if let Some(theta) = a.theta {
        v.echo("theta", theta);
        let class = classes
            .iter()
            .find(|c| c.class.contains(&theta))
            .ok_or_else(|| InputError::new("theta", format!("{theta} is not an element of pi1(N)")))?;
        v.set("class", &class.class).set("coefficients", class.coefficients);
    } else if let Some(first) = classes.first() {
        if classes.iter().all(|c| c.coefficients == first.coefficients) {
            v.set("coefficients", first.coefficients);
        } else {
            v.set("coefficients", "mixed");
        }
    }
    let z2_classes = classes.iter().filter(|c| c.coefficients == Coefficients::Z2).count();
    v.set("classes", &classes).set("z2_classes", z2_classes);
    Ok(v)
}

pub fn immersion(a: &ImmersionArgs) -> CmdResult {
    let body = input::text("curve", &a.curve)?;
    let im = FramedImmersion::from_json(&body).map_err(|e| InputError::new("curve", e))?;
    let mut v = Verdict::new("immersion");
    v.echo("curve", &a.curve).echo("components", im.components.len());
    let rotations: Vec<i64> = im.components.iter().map(|c| c.rotation_number()).collect();
    v.set("h1", im.h1()).set("h2", im.h2());
    if let [r] = rotations[..] {
        v.set("rotation", r);
    } else {
        v.set("rotations", &rotations);
    }
    v.set("double_point_count", im.double_points().len())
        .set("double_points", im.double_points())
        .cite([Citation::SelfIntersectionInvariants]);
    Ok(v)
}

fn torus_field(e: &TorusError) -> &'static str {
    match e {
        TorusError::LengthMismatch { .. } => "b",
        TorusError::Resolution(_) | TorusError::TooManyCells { .. } => "res",
        TorusError::Dimension(_) | TorusError::Coefficient(_) => "a",
    }
}

pub fn oracle_torus(a: &OracleTorusArgs) -> CmdResult {
    let av: Vec<i64> = input::json("a", &a.a)?;
    let bv: Vec<i64> = input::json("b", &a.b)?;
    let spec = TorusMapSpec::new(av, bv, a.res).map_err(|e| InputError::new(torus_field(&e), e))?;
    let report = oracle_components(&spec).map_err(|e| InputError::new(torus_field(&e), e))?;
    let formula = nielsen_core::circle::circle_nielsen(&CircleMapPairClass::from_row(&spec.difference()));
    let mut v = Verdict::new("oracle-torus");
    v.echo("a", &spec.a).echo("b", &spec.b).echo("res", spec.resolution);
    v.set("components", report.components)
        .set("stabilized", report.stabilized)
        .set("counts", &report.counts)
        .set("formula", formula)
        .cite([Citation::CircleTarget]);
    if formula == 0 {
        v.caveat("a = b: the coincidence set is the whole torus, one component, while N = 0");
    }
    if !report.stabilized {
        v.undecided("Unknown: the component count changed between the last two resolutions");
    }
    Ok(v)
}

pub fn tables(a: &TablesArgs) -> CmdResult {
    let stems = StableStemTable::load().map_err(|e| InputError::new(DATA_DIR_ENV, e))?;
    let db = InjectivityDb::load().map_err(|e| InputError::new(DATA_DIR_ENV, e))?;
    let mut v = Verdict::new("tables");
    v.echo("max_n", a.max_n).echo("max_m", a.max_m);
    let source = match std::env::var(DATA_DIR_ENV) {
        Ok(dir) if !dir.is_empty() => dir,
        _ => "embedded".to_string(),
    };
    v.set("data_source", source);
    let stem_rows: Vec<_> = stems
        .entries()
        .iter()
        .enumerate()
        .map(|(k, e)| json!({"k": k, "group": e.group.to_string(), "certified": e.certified}))
        .collect();
    v.set("stems", stem_rows);
    let mut grid = Vec::new();
    for n in 2..=a.max_n {
        for m in n..=a.max_m {
            let r = db.gamma_injectivity(m, n).map_err(|e| InputError::new("max_n", e))?;
            grid.push(json!({"m": m, "n": n, "verdict": r.verdict, "source": r.source}));
        }
    }
    v.set("injectivity", grid);
    let citations: Vec<_> = Citation::ALL.iter().map(|c| json!({"tag": c.tag(), "module": c.module()})).collect();
    v.set("citations", citations);
    if stems.entries().iter().any(|e| !e.certified) {
        v.caveat("uncertified stems are transcribed from published tables and are not checked here");
    }
    Ok(v)
}
