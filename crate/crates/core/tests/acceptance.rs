//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.

mod common;

use common::*;
use quiverknot::algebra::{endomorphisms, Axiom, Biquandle, BqMap};
use quiverknot::complex::{n_directed_clique_complex, SimplicialComplex};
use quiverknot::diagram::colorings;
use quiverknot::fixtures;
use quiverknot::homology::{betti_gf2, integer_homology};
use quiverknot::persistence::{persistence_pair, quiver_filtration};
use quiverknot::quiver::{
    build_quiver, in_degree_multiset, in_degree_polynomial, quivers_isomorphic, Quiver,
};
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn run(id: &str, title: &str, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Outcome::Fail(msg)
        });
    let ms = start.elapsed().as_millis();
    match outcome {
        Outcome::Pass => {
            println!("PASS {id} {title} ({ms} ms)");
            true
        }
        Outcome::Fail(why) => {
            println!("FAIL {id} {title}: {why}");
            false
        }
        Outcome::Skip(why) => {
            println!("SKIP {id} {title}: {why}");
            true
        }
    }
}

fn outcome(r: Check) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e),
    }
}

fn sets<T: Ord + Clone>(v: &[T]) -> BTreeSet<T> {
    v.iter().cloned().collect()
}

fn tuples(v: &[BqMap]) -> BTreeSet<Vec<usize>> {
    v.iter().map(BqMap::to_one_indexed).collect()
}

fn mutate_diagonal(x: &Biquandle, at: usize) -> Biquandle {
    let mut under = x.under_table();
    under[at][at] = (x.over(at, at) + 1) % x.size();
    Biquandle::from_tables(under, x.over_table()).unwrap()
}

fn c1_validation() -> Check {
    for name in ["poly_f4", "z3", "z4", "z6_a", "z6_b", "z5"] {
        let x = bq(name);
        let report = x.validate();
        ensure!(report.is_valid(), "{name} rejected: {report}");
        for at in 0..x.size() {
            let bad = mutate_diagonal(&x, at).validate();
            let v = bad.violation.ok_or(format!("{name} mutated at {at} accepted"))?;
            ensure!(
                v.axiom == Axiom::FixedPoint && v.witness == vec![at],
                "{name} mutated at {at}: reported {:?} {:?}",
                v.axiom,
                v.witness
            );
        }
    }
    // the documented mutation: row 1, column 1 of the four-element matrix set to 2
    let x = bq("poly_f4");
    let mut under = x.under_table();
    under[0][0] = 1;
    let v = Biquandle::from_tables(under, x.over_table()).unwrap().validate().violation;
    ensure!(
        matches!(&v, Some(v) if v.axiom == Axiom::FixedPoint && v.witness == vec![0]),
        "mutation under[1][1]=2 not reported at x=1"
    );
    Ok(())
}

fn c2_endomorphisms() -> Check {
    let z5 = bq(ALEX5);
    let expected: BTreeSet<Vec<usize>> = [
        [1, 2, 3, 4, 5],
        [2, 4, 1, 3, 5],
        [3, 1, 4, 2, 5],
        [4, 3, 2, 1, 5],
        [5, 5, 5, 5, 5],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    let got = endomorphisms(&z5);
    ensure!(got.len() == 5 && tuples(&got) == expected, "Alexander Z_5: {:?}", tuples(&got));
    let z3 = bq("z3");
    let expected: BTreeSet<Vec<usize>> = [
        [1, 1, 1],
        [1, 2, 3],
        [1, 3, 2],
        [2, 2, 2],
        [2, 3, 3],
        [3, 2, 2],
        [3, 3, 3],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    let got = endomorphisms(&z3);
    ensure!(got.len() == 7 && tuples(&got) == expected, "Z_3: {:?}", tuples(&got));
    Ok(())
}

fn c3_colorings() -> Check {
    // elements 1..4 encode 0, 1, s, s+1
    let code = |sym: &str| match sym {
        "0" => 1,
        "1" => 2,
        "s" => 3,
        "s+1" => 4,
        _ => unreachable!(),
    };
    let listed = [
        ["0", "0", "0", "0"],
        ["1", "0", "1", "s"],
        ["s", "0", "s", "s+1"],
        ["s+1", "0", "s+1", "1"],
    ];
    let expected: BTreeSet<Vec<usize>> = listed
        .iter()
        .map(|row| row.iter().map(|s| code(s)).collect())
        .collect();
    let d = diagram("virtual_two_crossing");
    let got = one_indexed(&colorings(&d, &bq("poly_f4")));
    ensure!(got.len() == 4 && sets(&got) == expected, "virtual knot x F4: {got:?}");

    let f8 = diagram("figure_eight");
    let got = one_indexed(&colorings(&f8, &bq(ALEX5)));
    let expected: BTreeSet<Vec<usize>> = [[5, 5], [1, 4], [2, 3], [3, 2], [4, 1]]
        .iter()
        .map(|p| (0..8).map(|i| p[i % 2]).collect())
        .collect();
    ensure!(got.len() == 5 && sets(&got) == expected, "figure-eight x Z_5: {got:?}");

    let got = one_indexed(&colorings(&d, &bq("z3")));
    let expected: BTreeSet<Vec<usize>> = (1..=3).map(|v| vec![v; 4]).collect();
    ensure!(sets(&got) == expected, "virtual knot x Z_3: {got:?}");
    Ok(())
}

fn c4_quivers() -> Check {
    let d = diagram("virtual_two_crossing");
    let f4 = bq("poly_f4");
    let q = build_quiver(&d, &f4, &endomorphisms(&f4)).map_err(|e| e.to_string())?;
    let p = in_degree_polynomial(&q).to_string();
    ensure!(p == "3u^3 + u^7", "virtual knot x F4 in-degree polynomial {p}");

    let x = bq(ALEX5);
    let filt = fixtures::filtration("alexander_z5_chain", &x).unwrap();
    let got: Vec<String> = in_degree_multiset(&diagram("figure_eight"), &x, &filt)
        .map_err(|e| e.to_string())?
        .iter()
        .map(ToString::to_string)
        .collect();
    let expected = ["5", "5u", "5u^2", "5u^3", "5u^4", "4u^4 + u^9"];
    ensure!(got == expected, "figure-eight multiset {got:?}");

    let z3 = bq("z3");
    let q = build_quiver(&d, &z3, &endomorphisms(&z3)).map_err(|e| e.to_string())?;
    let expected = vec![vec![3, 2, 2], vec![1, 3, 3], vec![1, 3, 3]];
    ensure!(q.mult == expected, "Z_3 quiver {:?}", q.mult);
    Ok(())
}

fn table_quiver() -> Quiver {
    let z3 = bq("z3");
    build_quiver(&diagram("virtual_two_crossing"), &z3, &endomorphisms(&z3)).unwrap()
}

fn c5_table() -> Check {
    let q = table_quiver();
    let all_edges: Vec<Vec<usize>> = vec![
        vec![0, 1],
        vec![0, 2],
        vec![1, 0],
        vec![1, 2],
        vec![2, 0],
        vec![2, 1],
    ];
    let all_tris: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    let rows: Vec<(usize, Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<usize>)> = vec![
        (1, all_edges, all_tris, vec![1, 0, 2]),
        (
            2,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![2, 1]],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
            vec![1, 0, 0],
        ),
        (3, vec![vec![1, 2], vec![2, 1]], vec![], vec![2, 1, 0]),
        (4, vec![], vec![], vec![3, 0, 0]),
    ];
    for (n, edges, tris, free) in rows {
        let k = n_directed_clique_complex(&q, n, 3);
        ensure!(k.count(0) == 3, "N={n}: vertex count");
        ensure!(sets(k.simplices(1)) == sets(&edges), "N={n}: K_1 = {:?}", k.simplices(1));
        ensure!(sets(k.simplices(2)) == sets(&tris), "N={n}: K_2 = {:?}", k.simplices(2));
        let h = integer_homology(&k, 2).map_err(|e| e.to_string())?;
        ensure!(h.free == free, "N={n}: free ranks {:?}", h.free);
        ensure!(h.torsion.iter().all(Vec::is_empty), "N={n}: torsion {:?}", h.torsion);
        let b = betti_gf2(&k, 2).unwrap();
        ensure!(b == free, "N={n}: GF(2) Betti {b:?}");
    }
    Ok(())
}

fn c6_toy() -> Check {
    for (name, expected) in [
        ("triangle_hollow", vec![vec![0, 0], vec![0, 0]]),
        ("triangle_filled", vec![vec![0, 0], vec![0, 1]]),
    ] {
        let fc = fixtures::filtered_complex(name).map_err(|e| e.to_string())?;
        let pp = persistence_pair(&fc);
        ensure!(pp.stillborn == expected, "{name}: {:?}", pp.stillborn);
    }
    Ok(())
}

fn c7_transcriptions() -> Outcome {
    Outcome::Skip(
        "the eight comparison diagrams (three two-link pairs and two tabulated links) exist only \
         as drawings; no crossing data that passes a listed coloring-set gate could be \
         obtained, so these regressions are not run"
            .into(),
    )
}

/// (diagram, biquandle) combinations exercised by the property sweep.
fn sweep() -> Vec<(&'static str, &'static str)> {
    let mut v = Vec::new();
    for (base, _) in fixtures::EQUIVALENT_PAIRS {
        for x in biquandle_names() {
            v.push((*base, x));
        }
    }
    v
}

fn c8_properties() -> Check {
    for (dname, xname) in sweep() {
        let x = bq(xname);
        let filt = filtration_for(xname, &x);
        let (base, stab) = fixtures::EQUIVALENT_PAIRS
            .iter()
            .find(|(b, _)| *b == dname)
            .copied()
            .unwrap();
        let (d, d2) = (diagram(base), diagram(stab));
        let tag = format!("{dname} x {xname}");
        let qs = quiver_filtration(&d, &x, &filt).map_err(|e| e.to_string())?;
        let qs2 = quiver_filtration(&d2, &x, &filt).map_err(|e| e.to_string())?;
        check_row_sums(&qs, &filt).map_err(|e| format!("{tag}: {e}"))?;
        check_row_sums(&qs2, &filt).map_err(|e| format!("{tag} stabilized: {e}"))?;
        ensure!(
            qs[0].vertex_count() == qs2[0].vertex_count(),
            "{tag}: coloring counts differ across moves"
        );
        for (i, (a, b)) in qs.iter().zip(&qs2).enumerate() {
            ensure!(
                in_degree_polynomial(a) == in_degree_polynomial(b),
                "{tag}: in-degree polynomials differ at stage {i}"
            );
            if a.vertex_count() <= 8 {
                ensure!(
                    quivers_isomorphic(a, b).unwrap(),
                    "{tag}: quivers not isomorphic at stage {i}"
                );
            }
        }
        let max_mult = qs.last().unwrap().max_multiplicity();
        for n in 1..=max_mult.max(1) {
            let k = n_directed_clique_complex(qs.last().unwrap(), n, 3);
            check_boundary_squares(&k).map_err(|e| format!("{tag} N={n}: {e}"))?;
            let k_next = n_directed_clique_complex(qs.last().unwrap(), n + 1, 3);
            ensure!(
                simplex_set(&k_next).is_subset(&simplex_set(&k)),
                "{tag}: N={} complex not inside N={n}",
                n + 1
            );
        }
        for n in [1, 2] {
            check_persistence(&qs, n, 3, 20).map_err(|e| format!("{tag} N={n}: {e}"))?;
            let (_, pp) = pipeline(&d, &x, &filt, n, 3);
            let (_, pp2) = pipeline(&d2, &x, &filt, n, 3);
            ensure!(
                pp.bars == pp2.bars && pp.stillborn == pp2.stillborn,
                "{tag} N={n}: persistence pairs differ across moves"
            );
        }
    }
    Ok(())
}

fn c9_oracles() -> Check {
    for (dname, _) in fixtures::DIAGRAMS {
        let d = diagram(dname);
        for xname in biquandle_names() {
            let x = bq(xname);
            let space = (x.size() as f64).powi(d.semi_arcs as i32);
            if space > 1e6 {
                continue;
            }
            ensure!(
                colorings(&d, &x) == naive_colorings(&d, &x),
                "{dname} x {xname}: backtracking differs from brute force"
            );
        }
    }
    for xname in biquandle_names() {
        let x = bq(xname);
        if x.size() <= 5 {
            ensure!(
                endomorphisms(&x) == naive_endomorphisms(&x),
                "{xname}: pruned endomorphisms differ from the n^n scan"
            );
        }
    }
    let mut complexes: Vec<SimplicialComplex> = Vec::new();
    for (dname, xname) in sweep() {
        let x = bq(xname);
        let q = build_quiver(&diagram(dname), &x, &endomorphisms(&x)).unwrap();
        for n in 1..=q.max_multiplicity().max(1) {
            complexes.push(n_directed_clique_complex(&q, n, 3));
        }
    }
    for (name, _) in fixtures::COMPLEXES {
        complexes.push(fixtures::complex(name).unwrap());
    }
    for k in &complexes {
        let top = k.max_dim - 1;
        ensure!(
            betti_gf2(k, top).unwrap() == betti_by_columns(k, top),
            "Betti numbers disagree between eliminations"
        );
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let results = [
        run("1", "biquandle axioms and diagonal mutations", || outcome(c1_validation())),
        run("2", "endomorphism sets", || outcome(c2_endomorphisms())),
        run("3", "coloring sets", || outcome(c3_colorings())),
        run("4", "quivers and in-degree polynomials", || outcome(c4_quivers())),
        run("5", "directed clique complexes and integral homology", || outcome(c5_table())),
        run("6", "stillborn matrices of the triangle filtrations", || outcome(c6_toy())),
        run("7", "transcribed two-link comparisons", c7_transcriptions),
        run("8", "property suites and move invariance", || outcome(c8_properties())),
        run("9", "oracle equivalence", || outcome(c9_oracles())),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} criteria, {failed} failed ({:.1} s)",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
