use glsm_core::algebra::{parse_rat, BigRat, CohClass};
use glsm_core::graphs::{
    contract_c, convert_markings_b, descending_chains, enumerate_loc_graphs, epsilon_stable, graph_leq,
    level_string, parse_level, triple_stable, ComponentData, ContractionRecord, DualGraph,
};
use glsm_core::jfun::{edge_contribution, i_function, jwc_check, mu_table, predicted_degree};
use glsm_core::model::{choose_delta, list_sectors, GlsmModel};
use glsm_core::p1series::{
    closed_form_stilde_h, closed_form_stilde_one, hyperplane, irr_ratio_check, one, p1_graph_sum, point_inf,
    point_zero, sqrt_phi, stilde_at_zero, Insertion,
};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{self, Check, Report};
use crate::{verify, Command};

type Outcome = Result<(Value, Vec<Check>), String>;

pub fn run(cmd: Command, cfg: &RunConfig) -> Report {
    let name = format!("{:?}", cmd).to_lowercase();
    let inputs = serde_json::to_value(cfg).expect("config serializes");
    let outcome = match cmd {
        Command::Stability => cfg.epsilon().map_err(|e| e.to_string()).and_then(|e| stability(&e, cfg)),
        Command::Contract => cfg.epsilon().map_err(|e| e.to_string()).and_then(|e| contract(&e, cfg)),
        Command::Order => order(cfg),
        Command::P1 => p1(cfg),
        Command::Verify => Ok(verify::run(cfg)),
        _ => cfg.model().map_err(|e| e.to_string()).and_then(|model| match cmd {
            Command::Sectors => sectors(&model),
            Command::Graphs => graphs(&model, cfg),
            Command::Aut => aut(&model, cfg),
            Command::Ifun => ifun(&model, cfg),
            Command::Mu => mu(&model, cfg),
            Command::Edge => edge(&model, cfg),
            _ => jwc(&model, cfg),
        }),
    };
    match outcome {
        Ok((results, checks)) => Report { command: name, inputs, results, checks },
        Err(e) => Report { command: name, inputs, results: Value::Null, checks: vec![Check::fail("command", e)] },
    }
}

fn need<'a, T>(x: &'a Option<T>, field: &str) -> Result<&'a T, String> {
    x.as_ref().ok_or_else(|| format!("config field `{}` is required", field))
}

fn rat_field(s: &str) -> Result<BigRat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn sectors(model: &GlsmModel) -> Outcome {
    let secs = list_sectors(model);
    let delta = choose_delta(&model.epsilon).map_err(|e| e.to_string())?;
    let mut bad = None;
    for k in -1..=(2 * model.unstable_bound() + 4) {
        let a = &model.epsilon * BigRat::from_integer(k.into()) - BigRat::one();
        let b = &a + &delta;
        if a.is_zero() || a.signum() != b.signum() {
            bad = Some(k);
            break;
        }
    }
    let check = match bad {
        None => Check::pass("delta keeps sign of k*epsilon - 1"),
        Some(k) => Check::fail("delta keeps sign of k*epsilon - 1", format!("k = {}", k)),
    };
    Ok((
        json!({
            "sectors": secs,
            "unstable_bound": model.unstable_bound(),
            "delta": report::rat(&delta),
        }),
        vec![check],
    ))
}

fn violations_check(name: &str, v: &[glsm_core::graphs::Violation]) -> Check {
    match v.first() {
        None => Check::pass(name),
        Some(x) => Check::fail(name, x.to_string()),
    }
}

fn stability(eps: &BigRat, cfg: &RunConfig) -> Outcome {
    let light = cfg.light_delta.as_deref().map(rat_field).transpose()?;
    let mut results = serde_json::Map::new();
    let mut checks = Vec::new();
    if let Some(comps) = &cfg.components {
        let verdicts: Vec<bool> = comps
            .iter()
            .map(|c| {
                let data = ComponentData {
                    genus: c.genus,
                    degree: c.degree,
                    special_points: c.special_points,
                    basepoints: c.basepoints.clone(),
                };
                epsilon_stable(&data, eps, light.as_ref())
            })
            .collect();
        results.insert("components".into(), json!(verdicts));
    }
    if let Some(g) = &cfg.graph {
        checks.push(violations_check("graph validates", &g.validate()));
        results.insert("epsilon_stable".into(), json!(g.is_epsilon_stable(eps)));
        results.insert("infinity_stable".into(), json!(g.is_infinity_stable()));
    }
    if results.is_empty() {
        return Err("config needs `components` or `graph`".into());
    }
    Ok((Value::Object(results), checks))
}

fn record_checks(rec: &ContractionRecord, input: &DualGraph, eps: &BigRat) -> Vec<Check> {
    let mut checks = vec![violations_check("contracted graph validates", &rec.graph.validate())];
    checks.push(if rec.graph.is_epsilon_stable(eps) {
        Check::pass("contracted graph is epsilon-stable")
    } else {
        Check::fail("contracted graph is epsilon-stable", "some component is unstable")
    });
    let bp: u32 = rec.basepoints.iter().map(|b| b.order).sum();
    let before = input.total_degree();
    checks.push(if rec.graph.total_degree() == before {
        Check::pass("degree preserved")
    } else {
        Check::fail("degree preserved", format!("{} became {} ({} in basepoints)", before, rec.graph.total_degree(), bp))
    });
    checks
}

fn contract(eps: &BigRat, cfg: &RunConfig) -> Outcome {
    let g = need(&cfg.graph, "graph")?;
    let rec = match &cfg.beta_vec {
        Some(b) => convert_markings_b(g, b, eps),
        None => contract_c(g, eps),
    }
    .map_err(|e| e.to_string())?;
    let mut checks = record_checks(&rec, g, eps);
    if cfg.beta_vec.is_some() {
        checks.retain(|c| c.name != "degree preserved");
    }
    Ok((serde_json::to_value(&rec).expect("record serializes"), checks))
}

fn graphs(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    let spec = need(&cfg.enumerate, "enumerate")?;
    let gs = enumerate_loc_graphs(model, spec.g, spec.n, spec.beta, spec.delta).map_err(|e| e.to_string())?;
    let eps = &model.epsilon;
    let mut checks = Vec::new();
    let mut items = Vec::new();
    let mut first = None;
    for (i, g) in gs.iter().enumerate() {
        if first.is_none() {
            if let Some(v) = g.validate(eps).first() {
                first = Some(format!("graph {}: {}", i, v));
            }
        }
        let ad = g.aut_degree(eps);
        items.push(json!({ "graph": g, "aut": ad }));
    }
    checks.push(match first {
        None if gs.is_empty() => Check::skipped("every graph validates", "no graphs"),
        None => Check::pass("every graph validates"),
        Some(e) => Check::fail("every graph validates", e),
    });
    Ok((json!({ "count": gs.len(), "graphs": items }), checks))
}

fn aut(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    if let Some(lg) = &cfg.loc_graph {
        let checks = vec![violations_check("graph validates", &lg.validate(&model.epsilon))];
        return Ok((serde_json::to_value(lg.aut_degree(&model.epsilon)).unwrap(), checks));
    }
    let g = need(&cfg.graph, "graph or loc_graph")?;
    let checks = vec![violations_check("graph validates", &g.validate())];
    Ok((serde_json::to_value(glsm_core::graphs::aut_degree(g)).unwrap(), checks))
}

fn order(cfg: &RunConfig) -> Outcome {
    let top = need(&cfg.graph, "graph")?;
    let mut checks = vec![
        violations_check("graph validates", &top.validate()),
        if triple_stable(top) {
            Check::pass("graph is a stable triple")
        } else {
            Check::fail("graph is a stable triple", "stability fails")
        },
    ];
    let mut results = serde_json::Map::new();
    if let Some(b) = &cfg.graph_b {
        results.insert("graph_b_leq_graph".into(), json!(graph_leq(b, top)));
        results.insert("graph_leq_graph_b".into(), json!(graph_leq(top, b)));
    }
    let max_len = cfg.max_chain.unwrap_or(2);
    let chains = descending_chains(top, max_len);
    let ok = chains.iter().all(|c| c.windows(2).all(|w| graph_leq(&w[1], &w[0]) && !graph_leq(&w[0], &w[1])));
    checks.push(if ok {
        Check::pass("chains strictly descend")
    } else {
        Check::fail("chains strictly descend", "a step is not strict")
    });
    results.insert("chains".into(), json!(chains));
    Ok((Value::Object(results), checks))
}

fn insertion_class(name: &str) -> Result<CohClass, String> {
    match name {
        "1" => Ok(one()),
        "H" => Ok(hyperplane()),
        "0" => Ok(point_zero()),
        "inf" | "∞" => Ok(point_inf()),
        _ => Err(format!("unknown insertion class `{}`", name)),
    }
}

fn p1(cfg: &RunConfig) -> Outcome {
    let y = cfg.truncations.y_max;
    let mut results = serde_json::Map::new();
    let mut checks = Vec::new();
    if let Some(spec) = &cfg.p1 {
        let ins = spec
            .insertions
            .iter()
            .map(|i| Ok(Insertion::new(insertion_class(&i.class)?, i.psi)))
            .collect::<Result<Vec<_>, String>>()?;
        let v = p1_graph_sum(spec.delta, &ins).map_err(|e| e.to_string())?;
        results.insert("correlator".into(), report::ratfun(&v));
    }
    let s1 = stilde_at_zero(&one(), y);
    let sh = stilde_at_zero(&hyperplane(), y);
    checks.push(series_check("stilde(1) closed form", &s1, &closed_form_stilde_one(y)));
    checks.push(series_check("stilde(H) closed form", &sh, &closed_form_stilde_h(y)));
    results.insert("stilde_one".into(), report::y_series(&s1));
    results.insert("stilde_h".into(), report::y_series(&sh));
    results.insert("phi_inv_quarter".into(), report::y_series(&closed_form_stilde_one(y)));
    results.insert("sqrt_phi".into(), report::y_series(&sqrt_phi(y)));
    match irr_ratio_check(y) {
        Ok(r) => {
            checks.push(Check::pass("irrational ratio"));
            results.insert("ratio".into(), report::y_series(&r.ratio));
        }
        Err(e) => checks.push(Check::fail("irrational ratio", e.to_string())),
    }
    Ok((Value::Object(results), checks))
}

fn series_check(
    name: &str,
    a: &glsm_core::TruncSeries<glsm_core::RatFun>,
    b: &glsm_core::TruncSeries<glsm_core::RatFun>,
) -> Check {
    match (0..=a.order()).find(|&k| a.coeff(k) != b.coeff(k)) {
        None => Check::pass(name),
        Some(k) => Check::fail(name, format!("y^{}: {} vs {}", k, a.coeff(k), b.coeff(k))),
    }
}

fn ifun(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    let i = i_function(model, cfg.truncations.q_max, cfg.twisted).map_err(|e| e.to_string())?;
    let mut out = serde_json::Map::new();
    let mut first = None;
    for t in &i.terms {
        let deg = predicted_degree(model, t.beta, cfg.twisted).map_err(|e| e.to_string())?;
        if first.is_none() && !t.value.is_homogeneous_of(deg) {
            first = Some(format!("q^{} is not of degree {}", t.beta, deg));
        }
        out.insert(
            format!("q^{}", t.beta),
            json!({ "sector": report::rat(&t.sector), "degree": deg, "value": report::class(&t.value) }),
        );
    }
    let check = match first {
        None => Check::pass("homogeneous of predicted degree"),
        Some(e) => Check::fail("homogeneous of predicted degree", e),
    };
    Ok((Value::Object(out), vec![check]))
}

fn mu(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    let t = mu_table(model, cfg.truncations.q_max, cfg.twisted).map_err(|e| e.to_string())?;
    let bound = model.unstable_bound();
    let mut out = serde_json::Map::new();
    let mut first = None;
    for (b, c) in &t.entries {
        if first.is_none() && (*b == 0 || *b as i64 > bound) && !c.is_zero() {
            first = Some(format!("mu at q^{} is nonzero", b));
        }
        out.insert(format!("q^{}", b), report::class(c));
    }
    let check = match first {
        None => Check::pass("mu vanishes at q^0 and above the unstable bound"),
        Some(e) => Check::fail("mu vanishes at q^0 and above the unstable bound", e),
    };
    Ok((json!({ "unstable_bound": bound, "mu": out }), vec![check]))
}

fn edge(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    let spec = need(&cfg.edge, "edge")?;
    let level = spec.unstable_vertex.as_deref().map(parse_level).transpose().map_err(|e| e.to_string())?;
    let c = edge_contribution(model, spec.delta, spec.beta, cfg.twisted, level).map_err(|e| e.to_string())?;
    let lvl = level.map(level_string);
    Ok((json!({ "unstable_vertex": lvl, "value": report::class(&c) }), vec![Check::pass("edge factor computed")]))
}

fn jwc(model: &GlsmModel, cfg: &RunConfig) -> Outcome {
    let e2 = rat_field(need(&cfg.epsilon_2, "epsilon_2")?)?;
    match jwc_check(model, &model.epsilon, &e2, cfg.truncations.q_max, cfg.twisted) {
        Ok(r) => Ok((
            json!({ "bound_1": r.bound_1, "bound_2": r.bound_2, "gained": r.gained, "lost": r.lost }),
            vec![Check::pass("wall-crossing difference")],
        )),
        Err(e) => Ok((Value::Null, vec![Check::fail("wall-crossing difference", e.to_string())])),
    }
}
