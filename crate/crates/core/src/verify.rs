//! The reference reproduction suite: every claim checked against the
//! embedded fixtures, grouped into numbered criteria.

use std::collections::{BTreeMap, BTreeSet};

use crate::ci::{build_matrix, gamma, generate_axioms, level_counts, AxiomEquation, CiStatement, Permutation};
use crate::error::Result;
use crate::fixtures::{expand_blocks, FixtureSet};
use crate::geometry::{edge_statement, face_lattice, is_simplicial, rank_test, statements_of_partition, vertices_from_facets};
use crate::imset::{is_combinatorial, verify_nonnormality, DEFAULT_DEGREE_CAP};
use crate::lp::{cone_dimension, rank, RationalMatrix};
use crate::markov::{
    axiom_moves, connectivity_check, count_01_points, fibers_up_to_degree, in_kernel, indispensability,
    minimal_generators_up_to_degree, orbit, prime_contains_axioms, prime_orbit, MarkovMove,
};
use crate::report::{Check, Report};
use crate::semigraphoid::{closure, is_coarsest, is_semigraphoid, sweep, StatementSet};
use crate::submodular::{certificate_report, is_submodular};

/// One numbered group of checks.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub report: Report,
}

pub const TITLES: [&str; 7] = [
    "counts and ranks",
    "simplicial non-submodular semigraphoid M (n=4)",
    "n=4 sweep and classification table",
    "coarsest non-submodular rank test Gamma (n=5)",
    "polytope of Gamma",
    "non-normality of the semigraphoid semigroup (n=5)",
    "Markov basis checks",
];

fn run(number: usize, f: &FixtureSet, body: fn(&FixtureSet, &mut Report) -> Result<()>) -> Criterion {
    let mut report = Report::new();
    if let Err(e) = body(f, &mut report) {
        report.error(format!("criterion {number} completes"), "no error", e);
    }
    Criterion {
        number,
        title: TITLES[number - 1],
        report,
    }
}

pub fn checksums(f: &FixtureSet) -> Report {
    let mut r = Report::new();
    for (name, expected, actual) in f.checksums() {
        r.expect_eq(format!("sha256 {name}"), expected, actual);
    }
    r
}

fn sorted(mut v: Vec<AxiomEquation>) -> Vec<AxiomEquation> {
    v.sort();
    v
}

fn counts_and_ranks(f: &FixtureSet, r: &mut Report) -> Result<()> {
    r.expect_eq("gamma_3", 6, gamma(3)?);
    r.expect_eq("gamma_4", 24, gamma(4)?);
    r.expect_eq("gamma_5", 80, gamma(5)?);
    r.expect_eq("axiom count n=4", 24, generate_axioms(4)?.len());
    r.expect_eq("axiom count n=5", 120, generate_axioms(5)?.len());
    r.expect_true(
        "generated n=4 axioms equal the fixture list",
        sorted(generate_axioms(4)?) == sorted(f.axioms4()?),
    );
    r.expect_true(
        "generated n=5 axioms equal the fixture list",
        sorted(generate_axioms(5)?) == sorted(f.axioms5()?),
    );
    r.expect_eq("rank A_5", 26, rank(&build_matrix(5)?.to_rational()));
    r.expect_eq("rank A_4", 11, rank(&build_matrix(4)?.to_rational()));
    let rows: Vec<Vec<i64>> = generate_axioms(4)?.iter().map(|a| a.signed_vector(24)).collect();
    r.expect_eq(
        "dimension of the nonnegative solution cone of the n=4 axioms",
        11,
        cone_dimension(&RationalMatrix::from_i64_rows(&rows))?,
    );
    Ok(())
}

fn statement_list(s: &StatementSet) -> String {
    s.statements().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn simplicial_m(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let m = f.m4()?;
    let space = m.space();
    r.expect_true("M is a semigraphoid", is_semigraphoid(&m));
    r.expect_eq("M is submodular", false, is_submodular(&m)?.submodular);
    let cert = certificate_report(&m)?;
    r.expect_true("certificate re-derives from the axioms", cert.verify(&m));
    let used: BTreeSet<AxiomEquation> = cert
        .terms
        .iter()
        .map(|(_, a)| AxiomEquation::canonical(a.lhs.0, a.lhs.1, a.rhs.0, a.rhs.1))
        .collect();
    let marked: BTreeSet<AxiomEquation> = f.axioms4_marked()?.into_iter().collect();
    let fmt_set = |s: &BTreeSet<AxiomEquation>| s.iter().map(|a| space.format_axiom(a)).collect::<Vec<_>>().join("; ");
    r.expect_eq("certificate uses exactly the marked equations", fmt_set(&marked), fmt_set(&used));
    let mults: BTreeSet<u64> = cert.terms.iter().map(|(k, _)| *k).collect();
    r.expect_eq("certificate multipliers are all equal", 1, mults.len());
    let forced: Vec<String> = cert.forced_zero.iter().map(|(_, s)| space.statement(*s).to_string()).collect();
    let coeffs: BTreeSet<u64> = cert.forced_zero.iter().map(|(k, _)| *k).collect();
    r.expect_eq("certificate forces to zero", "1.4| 2.3| 3.4|12 1.2|34", forced.join(" "));
    r.expect_eq("forced-zero coefficients are all equal", 1, coeffs.len());
    let part = rank_test(&m)?;
    r.expect_eq("rank test class sizes of M", "8x1 8x2", {
        let sizes = part.class_sizes();
        let ones = sizes.iter().filter(|&&s| s == 1).count();
        let twos = sizes.iter().filter(|&&s| s == 2).count();
        if ones + twos == sizes.len() {
            format!("{ones}x1 {twos}x2")
        } else {
            format!("{sizes:?}")
        }
    });
    r.expect_true("rank test of M equals the fixture partition", part == f.m4_partition()?);
    r.expect_eq("statements of the rank test of M", statement_list(&m), statement_list(&statements_of_partition(&part)?));
    r.expect_true("M is simplicial", is_simplicial(&m)?);
    Ok(())
}

fn sweep4(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let s = sweep(4)?;
    r.expect_eq("semigraphoids n=4", 26424, s.semigraphoids);
    r.expect_eq("submodular n=4", 22108, s.submodular);
    r.expect_eq("non-submodular n=4", 4316, s.non_submodular);
    r.expect_eq("simpliciality criterion vs extreme-ray oracle disagreements", 0, s.oracle_disagreements);
    let printed = f.table4()?;
    let max_size = printed.iter().map(|row| row.size).max().unwrap_or(0);
    let key = |row: &crate::semigraphoid::ClassificationRow| (row.size, row.signature_text());
    let expected: BTreeMap<_, _> = printed.iter().map(|row| (key(row), (row.non_simplicial, row.simplicial))).collect();
    let actual: BTreeMap<_, _> = s
        .rows_up_to(max_size)
        .iter()
        .map(|row| (key(row), (row.non_simplicial, row.simplicial)))
        .collect();
    let keys: BTreeSet<_> = expected.keys().chain(actual.keys()).cloned().collect();
    let mut diffs = Vec::new();
    for k in &keys {
        let e = expected.get(k);
        let a = actual.get(k);
        if e != a {
            let show = |v: Option<&(usize, usize)>| v.map_or_else(|| "absent".to_string(), |(x, y)| format!("{x}/{y}"));
            diffs.push(format!("size {} type {}: table {} computed {}", k.0, k.1, show(e), show(a)));
        }
    }
    r.record(Check {
        name: format!("classification table rows up to size {max_size} (non-simplicial/simplicial)"),
        expected: format!("all {} rows equal", expected.len()),
        actual: if diffs.is_empty() {
            format!("all {} rows equal", expected.len())
        } else {
            format!("{} rows differ: {}", diffs.len(), diffs.join("; "))
        },
        pass: diffs.is_empty(),
    });
    Ok(())
}

/// Wall statements of a single class.
fn class_statements(class: &[Permutation]) -> Result<BTreeSet<CiStatement>> {
    let members: BTreeSet<&Permutation> = class.iter().collect();
    let mut out = BTreeSet::new();
    for s in class {
        for k in 1..s.n() {
            let mut w = s.word().to_vec();
            w.swap(k - 1, k);
            if members.contains(&Permutation::from_word(w)?) {
                out.insert(edge_statement(s, k)?);
            }
        }
    }
    Ok(out)
}

fn coarsest_gamma(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let part = f.gamma_classes()?;
    let g = statements_of_partition(&part)?;
    r.expect_eq("statements of Gamma", 44, g.len());
    r.expect_true("statements of Gamma equal the fixture list", g == f.gamma_statements()?);
    let render = |s: &BTreeSet<CiStatement>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let c1 = class_statements(&expand_blocks("15|234")?)?;
    let listed = |text: &str| -> Result<BTreeSet<CiStatement>> { text.split_whitespace().map(str::parse).collect() };
    r.expect_eq(
        "statements of class 15|234",
        render(&listed("1.5| 2.3|15 2.3|145 2.4|15 2.4|135 3.4|15 3.4|125")?),
        render(&c1),
    );
    let c2 = class_statements(&expand_blocks("45|1|23")?)?;
    r.expect_eq("statements of class 45|1|23", render(&listed("4.5| 2.3|145")?), render(&c2));
    r.expect_true("Gamma contains both class lists", c1.iter().chain(&c2).all(|s| g.contains_statement(s)));
    r.expect_true("Gamma is a semigraphoid", is_semigraphoid(&g));
    let missing: Vec<_> = g.complement().iter().collect();
    r.expect_eq("statements outside Gamma", 36, missing.len());
    let all_full = missing.iter().all(|&i| {
        let mut ext = g.clone();
        ext.insert(i);
        closure(&ext).is_full()
    });
    r.expect_true("every single-statement extension closes to the full set", all_full);
    r.expect_true("Gamma is coarsest", is_coarsest(&g)?);
    r.expect_eq("Gamma is submodular", false, is_submodular(&g)?.submodular);
    r.expect_true("rank test of Gamma returns the 14 classes", rank_test(&g)? == part);
    Ok(())
}

fn polytope(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let h = f.polytope()?;
    let verts = vertices_from_facets(&h)?;
    r.expect_eq("vertices", 14, verts.len());
    let lat = face_lattice(&h, &verts);
    r.expect_eq("f-vector", "(14, 36, 32, 10)", {
        let parts: Vec<String> = lat.f_vector.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(", "))
    });
    // Rows 1..5 are the facets with element i first, rows 6..10 with i last.
    let stats = |row: usize| -> Option<crate::geometry::FacetStats> {
        let (c0, c) = &h.rows[row];
        let tight: BTreeSet<usize> = (0..verts.len())
            .filter(|&v| {
                let d: crate::rational::Rational = c.iter().zip(&verts[v]).map(|(a, b)| a * b).sum();
                d == *c0
            })
            .collect();
        lat.facets.iter().position(|t| *t == tight).map(|i| lat.facet_stats(i))
    };
    let show = |rows: &[usize]| {
        rows.iter()
            .map(|&i| stats(i).map_or_else(|| "not a facet".to_string(), |s| format!("{}v/{}e", s.vertices, s.edges)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    r.expect_eq("facets with 1 or 5 first", "7v/12e 7v/12e", show(&[0, 4]));
    r.expect_eq("facets with 2, 3 or 4 first", "7v/13e 7v/13e 7v/13e", show(&[1, 2, 3]));
    r.expect_eq("facets with 1 or 5 last (tetrahedra)", "4v/6e 4v/6e", show(&[5, 9]));
    r.expect_eq("facets with 2, 3 or 4 last", "7v/11e 7v/11e 7v/11e", show(&[6, 7, 8]));
    let euler = (0..lat.facets.len()).all(|i| {
        let s = lat.facet_stats(i);
        s.vertices + s.two_faces == s.edges + 2
    });
    r.expect_true("every facet satisfies V - E + F = 2", euler);
    Ok(())
}

fn nonnormal(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let b = f.b5()?;
    let ray = f.witness2b()?;
    r.extend(verify_nonnormality(&b, &ray)?);
    r.expect_true("fixture combination maps to 2b", ray.image() == b.scaled(2));
    r.expect_eq("level counts of b", "0,4,4,0", {
        level_counts(&b).map_or_else(|| "none".to_string(), |c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    });
    let w = is_combinatorial(&b.scaled(2))?;
    r.expect_true(
        "combinatorial witness for 2b maps to 2b",
        w.as_ref().is_some_and(|w| w.image() == b.scaled(2)),
    );
    Ok(())
}

fn markov(f: &FixtureSet, r: &mut Report) -> Result<()> {
    let g = f.g()?;
    r.expect_true("g is in ker A", in_kernel(&g));
    let rep = indispensability(&g, DEFAULT_DEGREE_CAP)?;
    r.expect_eq("degree of g+", 10, rep.degree);
    r.expect_eq("fiber of A g+", 2, rep.fiber_size);
    r.expect_true("g is indispensable", rep.indispensable);
    for (k, c) in f.cubics4()?.iter().enumerate() {
        r.expect_true(format!("cubic {} in ker A", k + 1), in_kernel(c));
        r.expect_true(format!("cubic {} indispensable", k + 1), indispensability(c, DEFAULT_DEGREE_CAP)?.indispensable);
    }
    let quartic = f.quartic4()?;
    let q = orbit(&quartic);
    r.expect_eq("S_4 orbit of the listed quartic", 24, q.len());
    r.expect_true("quartic orbit in ker A", q.iter().all(in_kernel));
    let mut all = true;
    for m in &q {
        all &= indispensability(m, DEFAULT_DEGREE_CAP)?.indispensable;
    }
    r.expect_true("quartic orbit indispensable", all);
    let gens = minimal_generators_up_to_degree(4, 4)?;
    let per_degree = |d: u64| gens.iter().filter(|m| m.positive().degree() == d).count();
    r.expect_eq("minimal Markov generators of degree 2, n=4", 24, per_degree(2));
    let cubics: BTreeSet<MarkovMove> = f.cubics4()?.iter().map(MarkovMove::canonical_sign).collect();
    let found3: BTreeSet<MarkovMove> = gens.iter().filter(|m| m.positive().degree() == 3).cloned().collect();
    r.expect_true("degree-3 generators are exactly the listed cubics", cubics == found3);
    r.expect_eq("minimal Markov generators of degree 4, n=4", 24, per_degree(4));
    r.expect_true(
        "listed quartic is a degree-4 generator",
        gens.contains(&quartic.canonical_sign()),
    );
    let mut all = true;
    for m in gens.iter().filter(|m| m.positive().degree() == 4) {
        all &= indispensability(m, DEFAULT_DEGREE_CAP)?.indispensable;
    }
    r.expect_true("every degree-4 generator is indispensable", all);
    let quadrics = axiom_moves(3)?;
    r.expect_eq("axiom quadrics n=3", 3, quadrics.len());
    let fibers = fibers_up_to_degree(3, 4)?;
    let conn = connectivity_check(&quadrics, &fibers, 4)?;
    r.expect_eq(
        format!("n=3 fibers of degree <= 4 disconnected by the quadrics (of {})", fibers.len()),
        0,
        conn.disconnected().count(),
    );
    let (sg, sub) = count_01_points(3)?;
    r.expect_eq("n=3 semigraphoid and submodular counts agree", "22/22", format!("{sg}/{sub}"));
    let primes = f.primes4()?;
    let codims: Vec<String> = primes.iter().map(|p| p.variables.len().to_string()).collect();
    r.expect_eq("prime codimensions", "12 15 16", codims.join(" "));
    r.expect_true("primes contain every axiom binomial", primes.iter().all(prime_contains_axioms));
    let orbits: Vec<String> = primes[1..].iter().map(|p| prime_orbit(p).len().to_string()).collect();
    r.expect_eq("orbit sizes of the codimension 15 and 16 primes", "12 3", orbits.join(" "));
    Ok(())
}

/// Criteria 1..=7 in order; the sweep (3) only when `full`.
pub fn criteria(f: &FixtureSet, full: bool) -> Vec<Criterion> {
    let mut out = vec![run(1, f, counts_and_ranks), run(2, f, simplicial_m)];
    if full {
        out.push(run(3, f, sweep4));
    }
    out.push(run(4, f, coarsest_gamma));
    out.push(run(5, f, polytope));
    out.push(run(6, f, nonnormal));
    out.push(run(7, f, markov));
    out
}

pub fn criterion(number: usize, f: &FixtureSet) -> Option<Criterion> {
    let body: fn(&FixtureSet, &mut Report) -> Result<()> = match number {
        1 => counts_and_ranks,
        2 => simplicial_m,
        3 => sweep4,
        4 => coarsest_gamma,
        5 => polytope,
        6 => nonnormal,
        7 => markov,
        _ => return None,
    };
    Some(run(number, f, body))
}

/// Checksums first, then every criterion; all checks run so a report names
/// every failure, and `first_failure` names the earliest.
pub fn verify_all(f: &FixtureSet, full: bool) -> Report {
    let mut r = checksums(f);
    for c in criteria(f, full) {
        let prefix = format!("[{}] ", c.number);
        for mut check in c.report.checks {
            check.name.insert_str(0, &prefix);
            r.record(check);
        }
    }
    r
}
