//! Run reports and the composite `reproduce` and `certify` commands.

use std::collections::BTreeSet;

use bordersub::monomials::{duality_degree_cap, find_invariant_monomial_within, generator_count, generator_family, is_torus_invariant, Monomial};
use bordersub::nullcone::{enumerate_maximal_components, is_maximal_nullcone_support, nullcone_feasible};
use bordersub::orbit::{unit_orbit_member, OrbitVerdict};
use bordersub::stabilizer::{
    cone_stabilizer_dim, cone_stabilizer_structure, dimension_count, main_theorem_bound, orbit_cone_tangent_dim, orbit_dim_unit,
    stabilizer_dim,
};
use bordersub::rational::int;
use bordersub::tensor::{all_triples, apply_permutation, build_w, tight_support, unit_plus_random, unit_tensor, w_dimension};
use bordersub::tight::{arithmetic_witness, check_tight_witness, find_tight_witness};
use bordersub::torus::{check_degeneration_certificate, example_one, example_two, w_cocharacter, positive_support};
use bordersub::{Error, Permutation, Result, Support, Tensor3, WVariant};
use serde_json::{json, Value};

pub const REPRODUCE_MAX_N: usize = 5;

pub const INAPPLICABLE: &str = "not of the form M + w with full diagonal; certificate method inapplicable";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport { command: command.into(), inputs, outputs: Value::Null, checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Keys come out sorted since `serde_json` maps are ordered.
    pub fn to_json_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {mark}  {:width$}  {}\n", c.name, c.detail));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }
}

fn check_eq<T: PartialEq + std::fmt::Debug>(r: &mut RunReport, name: String, got: T, want: T) {
    let detail = if got == want { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
    r.check(name, got == want, detail);
}

fn per_n_checks(r: &mut RunReport, n: usize) -> Result<()> {
    check_eq(r, format!("n={n} |W|"), w_dimension(n), (4 * n * n * n - 3 * n * n - n) / 6);
    let c2 = n * n.saturating_sub(1) / 2;
    let c3 = c2 * n.saturating_sub(2) / 3;
    check_eq(r, format!("n={n} generator count"), generator_count(n), n + 3 * c2 + 2 * c3);
    let invariant = generator_family(n).iter().all(is_torus_invariant);
    r.check(format!("n={n} generators invariant"), invariant, "");
    check_eq(r, format!("n={n} main theorem bound"), 3 * main_theorem_bound(n), 2 * n * n * n + 3 * n * n - 2 * n - 3);
    check_eq(r, format!("n={n} stabilizer of unit tensor"), stabilizer_dim(&unit_tensor(n)), 2 * n);
    check_eq(r, format!("n={n} orbit dimension"), orbit_dim_unit(n), 3 * n * n - 2 * n);
    if n >= 2 {
        let st = cone_stabilizer_structure(n);
        check_eq(r, format!("n={n} cone stabilizer (quotient)"), st.dim_quotient, (3 * n * n + n - 2) / 2);
        r.check(format!("n={n} cone stabilizer structure"), st.all_pass, st.violations.join("; "));
        let tangent = orbit_cone_tangent_dim(n, 0);
        check_eq(r, format!("n={n} tangent dimension"), tangent.value, main_theorem_bound(n));
        check_eq(r, format!("n={n} dimension count"), dimension_count(n, cone_stabilizer_dim(n)), tangent.value);
    }
    let tw = w_cocharacter(n);
    let closed = all_triples(n).all(|(i, j, k)| {
        tw.weight_of((i, j, k)).ok() == Some((1i64 << (n - j)) + (1i64 << (n - k)) - (1i64 << (n - i + 1)))
    });
    r.check(format!("n={n} cocharacter closed form"), closed, "");
    let t = unit_plus_random(&build_w(n, WVariant::W), 0)?;
    let v = check_degeneration_certificate(&t, &tw)?;
    r.check(format!("n={n} degeneration certificate"), v.is_valid(), v.describe());
    let tight = tight_support(n);
    let arithmetic = check_tight_witness(&tight, &arithmetic_witness(n))?;
    let found = find_tight_witness(&tight)?.is_some();
    r.check(format!("n={n} tight support"), arithmetic && found, "");
    let member = unit_orbit_member(&unit_tensor(n), 0);
    r.check(format!("n={n} unit tensor in its orbit"), member == OrbitVerdict::Member, member.label());
    Ok(())
}

fn permuted_ws() -> Vec<Support> {
    let mut out: Vec<Support> = Vec::new();
    for v in WVariant::ALL {
        for p in Permutation::all(3) {
            let s = apply_permutation(&p, &build_w(3, v)).expect("same format");
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn example_checks(r: &mut RunReport) -> Result<Value> {
    let u1 = positive_support(&example_one());
    let u2 = positive_support(&example_two());
    let ws = permuted_ws();
    for (name, u, size) in [("first example", &u1, 13), ("second example", &u2, 12)] {
        check_eq(r, format!("n=3 {name} size"), u.len(), size);
        let feasible = nullcone_feasible(u)?.feasible;
        let maximal = feasible && is_maximal_nullcone_support(u)?.maximal;
        r.check(format!("n=3 {name} maximal"), maximal, "");
    }
    r.check("n=3 first example differs from permuted W", !ws.contains(&u1), format!("{} permuted supports", ws.len()));
    let monomials = [
        [(1, 2, 3), (2, 1, 1), (3, 3, 2)],
        [(2, 3, 1), (3, 2, 2), (1, 1, 3)],
        [(1, 3, 2), (3, 2, 1), (2, 1, 3)],
    ];
    for f in monomials {
        let m = Monomial::new(3, f.to_vec())?;
        r.check(format!("n=3 monomial {m} invariant"), is_torus_invariant(&m), "");
    }
    let cap = duality_degree_cap(3);
    let blocked = all_triples(3).filter(|t| !u2.contains(*t)).all(|t| {
        find_invariant_monomial_within(&u2.with(t).expect("in range"), cap).is_some()
    });
    r.check("n=3 second example blocked by invariant monomials", blocked, "");
    let comps = enumerate_maximal_components(3, false)?;
    let sizes: BTreeSet<usize> = comps.supports.iter().map(Support::len).collect();
    r.check(
        "n=3 components not equidimensional",
        sizes.contains(&12) && sizes.contains(&13),
        format!("{} components, sizes {sizes:?}", comps.supports.len()),
    );
    let all_found = comps.supports.contains(&u1) && comps.supports.contains(&u2) && ws.iter().all(|s| comps.supports.contains(s));
    r.check("n=3 components contain the named supports", all_found, "");
    Ok(json!({"components": comps.supports.len(), "component_sizes": sizes, "complete": comps.complete}))
}

/// Every exact check for `n = 1..=n_max`, plus the fixed `n = 3` examples
/// when `n_max >= 3`.
pub fn cmd_reproduce(n_max: usize) -> Result<RunReport> {
    if !(1..=REPRODUCE_MAX_N).contains(&n_max) {
        return Err(Error::OutOfRange(format!("n_max = {n_max} (allowed 1..={REPRODUCE_MAX_N})")));
    }
    let mut r = RunReport::new("reproduce", json!({"n_max": n_max}));
    for n in 1..=n_max {
        per_n_checks(&mut r, n)?;
    }
    let examples = if n_max >= 3 { example_checks(&mut r)? } else { Value::Null };
    let failed = r.failures().count();
    r.outputs = json!({
        "passed": r.checks.len() - failed,
        "failed": failed,
        "n3_components": examples,
        "bounds": (1..=n_max).map(main_theorem_bound).collect::<Vec<_>>(),
    });
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyStatus {
    Certified,
    Refused,
    Inapplicable,
}

impl CertifyStatus {
    pub fn label(self) -> &'static str {
        match self {
            CertifyStatus::Certified => "certified",
            CertifyStatus::Refused => "refused",
            CertifyStatus::Inapplicable => "inapplicable",
        }
    }
}

pub fn certify_status(r: &RunReport) -> CertifyStatus {
    match r.outputs["status"].as_str() {
        Some("certified") => CertifyStatus::Certified,
        Some("refused") => CertifyStatus::Refused,
        _ => CertifyStatus::Inapplicable,
    }
}

/// Certifies maximal border subrank of `M + w` by a cocharacter pushing the
/// off-diagonal part to zero, or explains why no such certificate exists.
pub fn cmd_certify(t: &Tensor3) -> Result<RunReport> {
    let n = t.n();
    let mut r = RunReport::new("certify", json!({"tensor": t.to_json_value()}));
    let missing: Vec<usize> = (1..=n).filter(|&i| t.get((i, i, i)) == int(0)).collect();
    let detail = if missing.is_empty() { "all diagonal entries nonzero".to_string() } else { format!("zero diagonal entries at {missing:?}") };
    let full_diagonal = r.check("full diagonal", missing.is_empty(), detail);
    if !full_diagonal {
        r.outputs = json!({"status": CertifyStatus::Inapplicable.label(), "reason": INAPPLICABLE});
        return Ok(r);
    }
    let off = t.support().without_diagonal();
    let outcome = nullcone_feasible(&off)?;
    r.check("off-diagonal support in the torus nullcone", outcome.feasible, format!("{} triples", off.len()));
    let Some(tw) = outcome.certificate else {
        let obstruction = find_invariant_monomial_within(&off, duality_degree_cap(n));
        r.outputs = json!({
            "status": CertifyStatus::Refused.label(),
            "reason": format!("support of size {} admits no cocharacter with positive weights", off.len()),
            "support": off.to_json_value(),
            "obstruction": obstruction.as_ref().map(Monomial::to_json_value),
        });
        return Ok(r);
    };
    let v = check_degeneration_certificate(t, &tw)?;
    r.check("certificate validates", v.is_valid(), v.describe());
    if !v.is_valid() {
        return Err(Error::Invariant(format!("solver certificate rejected: {}", v.describe())));
    }
    r.outputs = json!({
        "status": CertifyStatus::Certified.label(),
        "certificate": serde_json::to_value(&tw)?,
        "support": off.to_json_value(),
    });
    Ok(r)
}
