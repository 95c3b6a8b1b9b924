//! wasm-bindgen entry points for the browser demo. Every export returns a JSON string;
//! failures come back as `{"error": "..."}`.

use std::sync::Arc;

use mackeylab::comack::{gorenstein_probe, loewy_diagram, parse_functor, pd_probe, Family, YoshidaContext};
use mackeylab::group::{predict, sylow_shape, tambara_rank, Group, SubgroupLattice};
use mackeylab::mackey::{self_injective_report, MackeyAlgebra};
use mackeylab::suite::{repeating_multiset, DEFAULT_SEED};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest resolution length the page may request.
pub const MAX_DEPTH: usize = 10;

type Out = Result<Value, String>;

fn parse(group: &str, prime: u32) -> Result<(Arc<Group>, u32), String> {
    let g = Arc::new(Group::parse(group).map_err(|e| e.to_string())?);
    let p = match prime {
        0 => g.smallest_prime().ok_or("the trivial group needs an explicit prime")?,
        p => p,
    };
    Ok((g, p))
}

fn render(out: Out) -> String {
    match out {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

pub fn classify(group: &str, prime: u32, depth: usize) -> Out {
    let (g, p) = parse(group, prime)?;
    let lat = SubgroupLattice::new(&g).map_err(|e| e.to_string())?;
    let pr = predict(&g, &lat, p as usize).map_err(|e| e.to_string())?;
    let probe = gorenstein_probe(g.clone(), p, depth.min(MAX_DEPTH), Some(DEFAULT_SEED)).map_err(|e| e.to_string())?;
    Ok(json!({
        "group": group,
        "prime": p,
        "order": g.order(),
        "subgroups": lat.len(),
        "sylow": sylow_shape(&g, &lat, p as usize),
        "tambara": tambara_rank(&g, &lat, p as usize),
        "prediction": pr,
        "verdict": probe.verdict,
        "consistent": probe.consistent,
        "max_pd": probe.max_pd,
    }))
}

pub fn resolve_functor(group: &str, prime: u32, functor: &str, depth: usize) -> Out {
    let (g, p) = parse(group, prime)?;
    let ctx = YoshidaContext::build(g, p, Family::Representatives).map_err(|e| e.to_string())?;
    let f = parse_functor(&ctx, functor, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let probe = pd_probe(&ctx, &f, depth.min(MAX_DEPTH), Some(DEFAULT_SEED)).map_err(|e| e.to_string())?;
    let evaluations: serde_json::Map<_, _> = (0..ctx.blocks())
        .map(|r| (ctx.block_label(r).to_string(), json!(f.evaluations()[r])))
        .collect();
    Ok(json!({
        "functor": functor,
        "algebra_dim": ctx.dim(),
        "evaluations": evaluations,
        "loewy": loewy_diagram(&f),
        "status": probe.status,
        "pd": probe.outcome,
        "conclusive": probe.conclusive,
        "evidence": probe.evidence,
        "repeating": repeating_multiset(&probe),
        "terms": probe.terms,
        "kernel_dims": probe.kernel_dims,
    }))
}

pub fn mackey_summary(group: &str, prime: u32) -> Out {
    let (g, p) = parse(group, prime)?;
    let mu = MackeyAlgebra::build(g, p).map_err(|e| e.to_string())?;
    let q = mu.cohomological_quotient().map_err(|e| e.to_string())?;
    Ok(json!({
        "dim": mu.dim(),
        "simples": mu.algebra.simple_count(),
        "cohomological_quotient_dim": q.image_dim,
        "kernel_dim": q.kernel_dim,
        "self_injective": self_injective_report(&mu).self_injective,
    }))
}

#[wasm_bindgen]
pub fn predict_group(group: &str, prime: u32, depth: usize) -> String {
    render(classify(group, prime, depth))
}

#[wasm_bindgen]
pub fn resolve(group: &str, prime: u32, functor: &str, depth: usize) -> String {
    render(resolve_functor(group, prime, functor, depth))
}

#[wasm_bindgen]
pub fn mackey(group: &str, prime: u32) -> String {
    render(mackey_summary(group, prime))
}
