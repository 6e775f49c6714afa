use coha_core::bbalg::{env_dims, nplus_dims, relations, simple_roots, ssn_components_one_vertex};
use coha_core::ffcount::{count_iso_classes, count_moment_fiber, CountStrategy};
use coha_core::gseries::{exp_plethystic, log_plethystic};
use coha_core::invariants::{
    bps_generator_check, cuspidal_from_kac, ip_from_cuspidal, kac_polynomials, pbw_point_count_check, CellStatus,
};
use coha_core::{AdamsMode, DimVector, Error, ErrorKind, GradedSeries, LaurentPoly, Quiver, Result, Truncation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, JobConfig};
use crate::report::{dim_cell, poly_cell, Report};

pub fn run(command: &Command, config: &JobConfig, quiver_hash: &str) -> Result<Report> {
    let params = config.params(command);
    let report = |columns: &[&str]| Report::new(command.name(), quiver_hash, params.clone(), columns);
    match command {
        Command::Info => info(config, report(&["vertex", "loops", "class", "euler_row"])),
        Command::Sigma => sigma(config, report(&["d", "p", "in_r_plus", "in_sigma"])),
        Command::Kac { strategy } => kac(config, (*strategy).into(), report(&["d", "M", "A", "degree_bound", "fields"])),
        Command::Cuspidal => cuspidal(config, report(&["d", "C_abs"])),
        Command::Ip => ip(config, report(&["d", "C", "IP"])),
        Command::Count { strategy, moment } => {
            let mut columns = vec!["q", "M"];
            if *moment {
                columns.push("moment_fibre");
            }
            count(config, (*strategy).into(), *moment, report(&columns))
        }
        Command::PbwCheck => pbw(config, report(&["q", "d", "stack", "sym", "status"])),
        Command::Bb => bb(config, report(&["d", "generators", "nplus", "env", "ssn_components"])),
        Command::Selfcheck { cases } => selfcheck(config, *cases, report(&["check", "cases", "failures"])),
    }
}

fn info(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let matrix = q.euler_matrix();
    for (i, name) in q.vertices().iter().enumerate() {
        let row: Vec<String> = matrix[i].iter().map(i64::to_string).collect();
        r.push(vec![
            json!(name),
            json!(q.loops(i)),
            serde_json::to_value(q.vertex_class(i)).expect("enum serializes"),
            json!(row.join(" ")),
        ]);
    }
    r.meta("vertices", q.vertex_count());
    r.meta("arrows", q.arrows().len());
    r.meta("totally_negative", q.is_totally_negative());
    Ok(r)
}

fn sigma(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let opts = config.sigma_options();
    for d in t.degrees().into_iter().skip(1) {
        r.push(vec![
            dim_cell(&d),
            json!(q.p(&d)),
            json!(q.in_r_plus(&d)?),
            json!(q.in_sigma(&d, opts)?),
        ]);
    }
    Ok(r)
}

fn kac(config: &JobConfig, strategy: CountStrategy, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let table = kac_polynomials(q, t, config.kac_options(strategy))?;
    for (d, a) in &table.a {
        let prov = &table.provenance[d];
        let fields: Vec<String> = prov.fields.iter().map(u64::to_string).collect();
        r.push(vec![
            dim_cell(d),
            poly_cell(&table.m[d]),
            poly_cell(a),
            json!(prov.degree_bound),
            json!(fields.join(" ")),
        ]);
    }
    r.check("kac_nonnegative", table.all_nonnegative(), "");
    Ok(r)
}

fn cuspidal(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let table = kac_polynomials(q, t, config.kac_options(CountStrategy::Auto))?;
    let cusp = cuspidal_from_kac(q, &table)?;
    let mut bad = Vec::new();
    for (d, c) in &cusp.c_abs {
        if !c.is_in_nq() {
            bad.push(d.to_string());
        }
        r.push(vec![dim_cell(d), poly_cell(c)]);
    }
    r.check("cuspidal_in_N[q]", bad.is_empty(), bad.join(" "));
    Ok(r)
}

fn ip(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let table = kac_polynomials(q, t, config.kac_options(CountStrategy::Auto))?;
    let cusp = cuspidal_from_kac(q, &table)?;
    let opts = config.sigma_options();
    let mut exponents = Vec::new();
    for d in t.degrees().into_iter().skip(1) {
        if !q.in_sigma(&d, opts)? {
            continue;
        }
        let ip = ip_from_cuspidal(q, &cusp, &d)?;
        if let (Some(lo), Some(hi)) = (ip.min_doubled_exponent(), ip.max_doubled_exponent()) {
            exponents.push(json!({"d": d.to_string(), "min": lo / 2, "max": hi / 2, "p": q.p(&d)}));
        }
        r.push(vec![dim_cell(&d), poly_cell(&cusp.c_abs[&d]), poly_cell(&ip)]);
    }
    let check = bps_generator_check(q, &table, &cusp)?;
    let mismatches: Vec<String> = check.mismatches.iter().map(DimVector::to_string).collect();
    r.check("bps_generator_identity", check.holds, mismatches.join(" "));
    r.meta("ip_convention", "IP_d(q) = C_d(q^-2), generators vanish off Σ");
    r.meta("ip_exponent_range", exponents);
    Ok(r)
}

fn count(config: &JobConfig, strategy: CountStrategy, moment: bool, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let d = config.require_truncation()?.bound().clone();
    for &field in &config.fields {
        let m = count_iso_classes(q, &d, field, config.count_options(strategy))?;
        let mut row = vec![json!(field), json!(m.to_string())];
        if moment {
            row.push(json!(count_moment_fiber(q, &d, field, config.moment_options())?.to_string()));
        }
        r.push(row);
    }
    r.meta("d", d.to_string());
    Ok(r)
}

fn pbw(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let table = kac_polynomials(q, t, config.kac_options(CountStrategy::Auto))?;
    let out = pbw_point_count_check(q, &table, &config.fields, config.moment_options())?;
    let rational = |x: &coha_core::Rational| json!(x.to_string());
    for cell in &out.cells {
        let status = match cell.status {
            CellStatus::Pass => "PASS",
            CellStatus::Fail => "FAIL",
            CellStatus::Skipped => "SKIPPED",
        };
        r.push(vec![
            json!(cell.q),
            dim_cell(&cell.d),
            cell.stack.as_ref().map_or(Value::Null, rational),
            rational(&cell.sym),
            json!(status),
        ]);
    }
    r.check(
        "pbw_point_count",
        out.all_pass(),
        format!("{} cells equal, {} skipped over budget", out.checked(), out.skipped()),
    );
    r.meta("convention", out.convention.to_string());
    r.meta("anchor_matches", out.anchor_matches.len());
    Ok(r)
}

fn bb(config: &JobConfig, mut r: Report) -> Result<Report> {
    let q = config.require_quiver()?;
    let t = config.require_truncation()?;
    let n_max = t.bound().iter().max().unwrap_or(0);
    let roots = simple_roots(q, n_max);
    let gens = coha_core::bbalg::generator_series(q, t)?;
    let nplus = match nplus_dims(q, t) {
        Ok(s) => Some(s),
        Err(Error::NotTotallyNegative(_)) => None,
        Err(e) => return Err(e),
    };
    let env = env_dims(q, t)?;
    let one_vertex = q.vertex_count() == 1;
    let mut ssn_ok = true;
    for d in t.degrees() {
        let ssn = if one_vertex {
            let c = ssn_components_one_vertex(q.loops(0), d[0]);
            ssn_ok &= env.coeff(&d) == LaurentPoly::constant(c.clone().into());
            json!(c.to_string())
        } else {
            Value::Null
        };
        r.push(vec![
            dim_cell(&d),
            poly_cell(&gens.coeff(&d)),
            nplus.as_ref().map_or(Value::Null, |s| poly_cell(&s.coeff(&d))),
            poly_cell(&env.coeff(&d)),
            ssn,
        ]);
    }
    if let Some(s) = &nplus {
        let pbw = exp_plethystic(s, AdamsMode::QAndZ)?;
        r.check("exp_nplus_equals_env", pbw == env, "");
    }
    if one_vertex {
        r.check("env_equals_ssn_components", ssn_ok, "");
    }
    let rel = relations(q, &roots)?;
    let roots_text: Vec<String> = roots.elements.iter().map(ToString::to_string).collect();
    r.meta("simple_roots", roots_text.join(" "));
    r.meta("serre_relations", rel.serre().count());
    r.meta("orthogonality_relations", rel.orthogonal().count());
    Ok(r)
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=3);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..rng.gen_range(0..=2) {
                arrows.push((i, j));
            }
        }
    }
    Quiver::from_indices(n, &arrows).expect("indices in range")
}

fn random_dim(rng: &mut ChaCha8Rng, n: usize) -> DimVector {
    DimVector::new((0..n).map(|_| rng.gen_range(0..=3)).collect())
}

fn random_series(rng: &mut ChaCha8Rng, trunc: &Truncation) -> GradedSeries {
    let terms = trunc.degrees().into_iter().skip(1).map(|d| {
        let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        (d, LaurentPoly::from_coeffs(&coeffs))
    });
    GradedSeries::from_terms(trunc.clone(), terms)
}

fn selfcheck(config: &JobConfig, cases: usize, mut r: Report) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut vrank_fail = 0;
    let mut shift_fail = 0;
    for _ in 0..cases {
        let q = random_quiver(&mut rng);
        let d1 = random_dim(&mut rng, q.vertex_count());
        let d2 = random_dim(&mut rng, q.vertex_count());
        match q.rhom_vrank(&d1, &d2) {
            Ok(_) => {}
            Err(e) if e.kind() == ErrorKind::Identity => vrank_fail += 1,
            Err(e) => return Err(e),
        }
        if !q.shift_identity_check(&d1, &d2)? {
            shift_fail += 1;
        }
    }
    let trunc = Truncation::new(DimVector::new(vec![3, 2]));
    let mut round_fail = [0usize; 2];
    for _ in 0..cases {
        let f = random_series(&mut rng, &trunc);
        for (k, mode) in [AdamsMode::ZOnly, AdamsMode::QAndZ].into_iter().enumerate() {
            let back = log_plethystic(&exp_plethystic(&f, mode)?, mode)?;
            if back != f {
                round_fail[k] += 1;
            }
        }
    }
    let rows = [
        ("rhom_vrank", vrank_fail),
        ("shift_identity", shift_fail),
        ("exp_log_z", round_fail[0]),
        ("exp_log_qz", round_fail[1]),
    ];
    for (name, fails) in rows {
        r.push(vec![json!(name), json!(cases), json!(fails)]);
        r.check(name, fails == 0, "");
    }
    Ok(r)
}
