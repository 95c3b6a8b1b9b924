use std::process::ExitCode;
use std::time::Instant;

use mackeylab::report::{Check, Status};
use mackeylab::suite::{SuiteOptions, CRITERIA};
use serde_json::{json, Value};

type Outcome = Result<(), String>;

fn measured<'a>(checks: &'a [Check], suffix: &str) -> Result<&'a Value, String> {
    checks
        .iter()
        .find(|c| c.name.ends_with(suffix))
        .map(|c| &c.measured)
        .ok_or_else(|| format!("no check named *{suffix}"))
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn expect_eq(got: &Value, want: Value, what: &str) -> Outcome {
    expect(*got == want, || format!("{what}: got {got}, want {want}"))
}

fn all_pass(checks: &[Check]) -> Outcome {
    match checks.iter().find(|c| c.status != Status::Pass) {
        Some(c) => Err(format!("{} is {}", c.name, c.status.as_str())),
        None => expect(!checks.is_empty(), || "no checks ran".into()),
    }
}

fn cyclic(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    for (g, n) in [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:4", 4), ("cyclic:5", 5)] {
        let m = measured(checks, &format!("/{g}"))?;
        expect_eq(&m["pd"], json!({"outcome": "finite", "pd": 2}), g)?;
        let e = &m["explicit"];
        expect_eq(&e["length"], json!(2), g)?;
        expect_eq(&e["exact"], json!(true), g)?;
        expect_eq(&e["minimal"], json!(true), g)?;
        expect_eq(&e["term_modules"], json!(["kG", "kG", "k"]), g)?;
        expect_eq(&m["probe_terms"][2], json!({ n.to_string(): 1 }), g)?;
    }
    Ok(())
}

fn dihedral(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    // X is G/H + G/C + G/K for two non-conjugate reflections H, K and the cyclic C of index 2.
    for (g, x) in [("prod(cyclic:2,cyclic:2)", 6), ("dihedral:8", 10)] {
        let m = measured(checks, &format!("/{g}"))?;
        expect_eq(&m["pd"], json!({"outcome": "finite", "pd": 3}), g)?;
        let e = &m["explicit"];
        expect_eq(&e["length"], json!(3), g)?;
        expect_eq(&e["exact"], json!(true), g)?;
        expect_eq(&e["x_size"], json!(x), g)?;
        expect_eq(&e["y_size"], json!(1), g)?;
    }
    Ok(())
}

fn omega(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    let m = measured(checks, "/prod(cyclic:2,cyclic:4)")?;
    expect_eq(&m["restriction"]["omega_dim"], json!(9), "C2xC4")?;
    expect_eq(&m["restriction"]["omega_h_dim"], json!(5), "C2xC4")?;
    expect_eq(&m["restriction"]["free_rank"], json!(1), "C2xC4")?;
    let m = measured(checks, "/q8")?;
    expect_eq(&m["restriction"]["omega_h_dim"], json!(1), "Q8")?;
    expect_eq(&m["restriction"]["free_rank"], json!(2), "Q8")?;
    let m = measured(checks, "/prod(cyclic:3,cyclic:3)")?;
    expect_eq(m, json!({"omega_dim": 10, "loewy_length": 4}), "C3xC3")
}

fn infinite(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    for g in [
        "prod(cyclic:2,cyclic:4)",
        "q8",
        "prod(cyclic:2,prod(cyclic:2,cyclic:2))",
        "prod(cyclic:3,cyclic:3)",
    ] {
        let m = measured(checks, &format!("/{g}"))?;
        expect_eq(&m["conclusion"], json!("no finite pd exists"), g)?;
        expect_eq(&m["probe"]["outcome"], json!({"outcome": "exceeds", "cap": 8}), g)?;
        let bound = m["probe"]["tambara_bound"].as_u64().unwrap_or(u64::MAX);
        expect(bound <= 4, || format!("{g}: Tambara bound {bound} > 4"))?;
    }
    Ok(())
}

fn gorenstein(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    let yes = [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:5",
        "prod(cyclic:2,cyclic:2)",
        "dihedral:8",
    ];
    let no = [
        "prod(cyclic:2,cyclic:4)",
        "q8",
        "prod(cyclic:2,prod(cyclic:2,cyclic:2))",
        "prod(cyclic:3,cyclic:3)",
    ];
    for (groups, verdict) in [(&yes[..], "gorenstein"), (&no[..], "not-gorenstein")] {
        for g in groups {
            let m = measured(checks, &format!("/{g}"))?;
            expect_eq(&m["verdict"], json!(verdict), g)?;
            expect_eq(
                &m["prediction"]["gorenstein_over_fp"],
                json!(verdict == "gorenstein"),
                g,
            )?;
        }
    }
    Ok(())
}

fn global_dimension(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    // By hand: rad P_1 = P_2 and rad P_2 = S_1, so pd S_1 = 1 and pd S_2 = 2.
    expect_eq(
        &measured(checks, "/cyclic:2")?["simple_pds"],
        json!({"1": 1, "2": 2}),
        "C2",
    )?;
    expect_eq(
        &measured(checks, "/cyclic:3")?["repeating"],
        json!({"1": 1, "3": 1}),
        "C3",
    )?;
    expect_eq(
        &measured(checks, "/cyclic:4")?["repeating"],
        json!({"1": 1, "2": 1}),
        "C4",
    )
}

fn c4_pims(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    let m = measured(checks, "c4-pims")?;
    expect_eq(
        &m["composition_factors"],
        json!({
            "1": {"1": 4, "2": 2, "4": 1},
            "2": {"1": 2, "2": 2, "4": 1},
            "4": {"1": 1, "2": 1, "4": 1},
        }),
        "composition factors",
    )?;
    expect_eq(&m["p4_layers"], json!("[4][2][1]"), "P_4 layers")
}

fn mackey(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    let m = measured(checks, "/c2-dimensions")?;
    expect_eq(&m["dim"], json!(6), "dim mu(C2)")?;
    expect_eq(&m["quotient_dim"], json!(5), "cohomological image")?;
    for (g, si) in [
        ("cyclic:2", true),
        ("cyclic:3", true),
        ("cyclic:4", false),
        ("prod(cyclic:2,cyclic:2)", false),
    ] {
        expect_eq(
            &measured(checks, &format!("/self-injective/{g}"))?["self_injective"],
            json!(si),
            g,
        )?;
    }
    for g in ["cyclic:4", "prod(cyclic:2,cyclic:2)"] {
        let m = measured(checks, &format!("/split-mono/{g}"))?;
        expect_eq(&m["trials"], json!(100), g)?;
        expect_eq(&m["injective"], m["split"].clone(), g)?;
        expect_eq(&m["counterexample"], Value::Null, g)?;
    }
    Ok(())
}

fn brauer(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    for g in ["cyclic:2", "cyclic:4"] {
        let rows = measured(checks, &format!("/{g}"))?
            .as_array()
            .cloned()
            .unwrap_or_default();
        expect(!rows.is_empty(), || format!("{g}: no rows"))?;
        for r in rows {
            expect(r["bar_dim"] == r["brauer_dim"], || format!("{g}: {r}"))?;
        }
    }
    Ok(())
}

fn properties(checks: &[Check]) -> Outcome {
    all_pass(checks)?;
    for (g, d) in [
        ("cyclic:2", 5),
        ("cyclic:3", 6),
        ("cyclic:4", 15),
        ("prod(cyclic:2,cyclic:2)", 37),
    ] {
        expect_eq(
            &measured(checks, &format!("yoshida-dimension/{g}"))?["dim"],
            json!(d),
            g,
        )?;
    }
    for c in checks.iter().filter(|c| c.name.contains("/exactness/")) {
        expect_eq(&c.measured["fp_left_exact"], json!(20), &c.name)?;
        expect_eq(&c.measured["fq_right_exact"], json!(20), &c.name)?;
    }
    let n = |kind: &str| checks.iter().filter(|c| c.name.contains(kind)).count();
    for kind in ["/yoshida-dimension/", "/exactness/", "/duality/", "/seed-independence/"] {
        expect(n(kind) == 10, || format!("{kind}: {} groups, want 10", n(kind)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let verify: [fn(&[Check]) -> Outcome; 10] = [
        cyclic,
        dihedral,
        omega,
        infinite,
        gorenstein,
        global_dimension,
        c4_pims,
        mackey,
        brauer,
        properties,
    ];
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for (criterion, verify) in CRITERIA.iter().zip(verify) {
        let start = Instant::now();
        let checks = criterion.run(&opts);
        let outcome = verify(&checks);
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!(
                "PASS  criterion {:2}  {} ({} checks, {ms} ms)",
                criterion.number,
                criterion.slug,
                checks.len()
            ),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {:2}  {}: {e}", criterion.number, criterion.slug);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
