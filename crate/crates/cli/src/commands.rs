//! One function per subcommand. Each fills a `Report` and returns a status.

use graphprod_core::{
    assemble_presentation, cohomological_dimension, dual_census, gocha_series, poincare_series, verify_identities,
    BigInt, CohomologicalDimension, FamilySpec, IdentityReport, PresentationError, ProductError, RankTable, Scalar,
    Series, VertexGroup,
};
use serde_json::{json, Map, Value};

use crate::input::{self, Loaded};
use crate::output::{
    int_value, join, polynomial_reciprocal, polynomial_text, ratio_string, sequence_text, sequence_value,
    series_text, series_value, write_csv, Report,
};
use crate::{Cli, CliError, Command, Ring, Status};

pub fn run(cli: &Cli) -> Result<(Report, Status), CliError> {
    let load = |file| input::load(file, cli.truncation);
    let mut report = Report::default();
    let (loaded, status) = match &cli.command {
        Command::Cliques { file } => {
            let loaded = load(file)?;
            cliques(&loaded, &mut report);
            (loaded, Status::Ok)
        }
        Command::Poincare { file } => {
            let loaded = load(file)?;
            poincare(&loaded, &mut report)?;
            (loaded, Status::Ok)
        }
        Command::Gocha { file } => {
            let loaded = load(file)?;
            gocha(&loaded, &mut report)?;
            (loaded, Status::Ok)
        }
        Command::Ranks { file, ring } => {
            let loaded = load(file)?;
            ranks(&loaded, *ring, &mut report)?;
            (loaded, Status::Ok)
        }
        Command::Dual { file } => {
            let loaded = load(file)?;
            let status = dual(&loaded, &mut report)?;
            (loaded, status)
        }
        Command::Oracle { file, max_degree } => {
            let loaded = load(file)?;
            let status = oracle(&loaded, *max_degree, &mut report)?;
            (loaded, status)
        }
        Command::Verify { file, max_degree } => {
            let loaded = load(file)?;
            let degree = max_degree.unwrap_or(loaded.spec.truncation());
            let status = verify(&loaded, degree, &mut report)?;
            (loaded, status)
        }
        Command::PaperExample => {
            let loaded = Loaded::example(cli.truncation.unwrap_or(16));
            let status = paper_example(&loaded, &mut report)?;
            (loaded, status)
        }
    };
    annotate(&loaded, &mut report);
    if let Some(path) = &cli.csv {
        write_csv(path, &rank_table(&loaded.spec)?)?;
    }
    Ok((report, status))
}

fn annotate(loaded: &Loaded, report: &mut Report) {
    report.set("conditional", Value::Bool(loaded.conditional()));
    if loaded.conditional() {
        report.note("results are conditional on declared Koszulity of the poincare vertices");
    }
    for (i, g) in loaded.spec.groups().iter().enumerate() {
        if let VertexGroup::ByPoincare { koszul: false, .. } = g {
            report.note(format!(
                "vertex {} is not declared Koszul; the gocha series and ranks do not apply to it",
                i + 1
            ));
        }
    }
}

fn rank_table(spec: &FamilySpec) -> Result<RankTable, CliError> {
    Ok(RankTable::from_gocha(&gocha_series(spec)?, spec.p())?)
}

fn header(spec: &FamilySpec, report: &mut Report) {
    report.line(format!(
        "p = {}, N = {}, {} vertices, {} edges",
        spec.p(),
        spec.truncation(),
        spec.graph().vertex_count(),
        spec.graph().edge_count()
    ));
    report.set("p", Value::from(spec.p()));
    report.set("truncation", Value::from(spec.truncation()));
}

fn cliques(loaded: &Loaded, report: &mut Report) {
    let list = loaded.spec.cliques();
    let mut by_size = Map::new();
    for m in 1..=list.max_size() {
        let of_size = list.of_size(m);
        report.line(format!("m = {m} ({}): {}", of_size.len(), join(of_size.iter())));
        by_size.insert(
            m.to_string(),
            Value::Array(of_size.iter().map(|c| Value::from(c.vertices().to_vec())).collect()),
        );
    }
    report.line(format!("total: {}", list.total()));
    report.set("cliques", Value::Object(by_size));
}

fn poincare(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let spec = &loaded.spec;
    header(spec, report);
    let h = poincare_series(spec)?;
    report.line(format!("H(t): {}", series_text(&h)));
    report.set("poincare", series_value(&h));
    let cd = match cohomological_dimension(spec)? {
        CohomologicalDimension::Finite(d) => {
            report.line(format!("cohomological dimension: {d}"));
            Value::from(d)
        }
        CohomologicalDimension::Unbounded => {
            report.line("cohomological dimension: unbounded");
            Value::Null
        }
    };
    report.set("cohomological_dimension", cd);
    Ok(())
}

fn gocha(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let spec = &loaded.spec;
    header(spec, report);
    let g = gocha_series(spec)?;
    report.line(format!("gocha(t): {}", series_text(&g)));
    report.set("gocha", series_value(&g));
    match polynomial_reciprocal(&g) {
        Some(den) => {
            report.line(format!("gocha(t) = 1 / ({})", polynomial_text(&den)));
            report.set("denominator", Value::Array(den.iter().map(int_value).collect()));
        }
        None => {
            report.line("no polynomial denominator below the truncation order");
            report.set("denominator", Value::Null);
        }
    }
    Ok(())
}

fn rank_rows(table: &RankTable, ring: Ring, report: &mut Report) {
    let mut cols = vec!["n".to_string(), "c_n".into(), "b_n".into()];
    if ring != Ring::Fp {
        cols.push("a_n(Z_p)".into());
    }
    if ring != Ring::Zp {
        cols.push("a_n(F_p)".into());
    }
    let mut rows = vec![cols];
    for n in 1..=table.truncation {
        let mut row = vec![n.to_string(), table.c[n - 1].to_string(), ratio_string(&table.b[n - 1])];
        if ring != Ring::Fp {
            row.push(table.a_zp.get(n).to_string());
        }
        if ring != Ring::Zp {
            row.push(table.a_fp.get(n).to_string());
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        report.line(cells.join("  ").trim_end());
    }
}

fn set_rank_json(h: &Series, g: &Series, table: &RankTable, ring: Ring, report: &mut Report) {
    report.set("poincare", series_value(h));
    report.set("gocha", series_value(g));
    report.set(
        "b",
        Value::Array(table.b.iter().map(|b| Value::String(ratio_string(b))).collect()),
    );
    if ring != Ring::Fp {
        report.set("a_zp", sequence_value(&table.a_zp));
    }
    if ring != Ring::Zp {
        report.set("a_fp", sequence_value(&table.a_fp));
    }
}

fn ranks(loaded: &Loaded, ring: Ring, report: &mut Report) -> Result<(), CliError> {
    let spec = &loaded.spec;
    header(spec, report);
    let h = poincare_series(spec)?;
    let g = gocha_series(spec)?;
    let table = RankTable::from_gocha(&g, spec.p())?;
    rank_rows(&table, ring, report);
    set_rank_json(&h, &g, &table, ring, report);
    Ok(())
}

fn dual(loaded: &Loaded, report: &mut Report) -> Result<Status, CliError> {
    let spec = loaded.presentable()?;
    header(&spec, report);
    let c = dual_census(&spec)?;
    let d2 = c.generators * c.generators;
    let complementary = c.counts_complementary();
    report.line(format!("generators d: {}", c.generators));
    report.line(format!(
        "S:  {} vertex relations + {} edge commutators, rank r(S) = {}",
        c.vertex_relations, c.edge_commutators, c.relation_rank
    ));
    report.line(format!(
        "S!: {} vertex dual relations + {} anticommutators + {} non-edge products, rank r(S!) = {}",
        c.vertex_dual_relations, c.anticommutators, c.non_edge_products, c.dual_rank
    ));
    report.line(format!(
        "r(S) + r(S!) = {} {} d^2 = {}",
        c.relation_rank + c.dual_rank,
        if complementary { "==" } else { "!=" },
        d2
    ));
    report.line(format!(
        "S! spans the orthogonal complement of S: {}",
        if c.matches_quadratic_dual { "yes" } else { "no" }
    ));
    report.set(
        "dual",
        json!({
            "generators": c.generators,
            "vertex_relations": c.vertex_relations,
            "edge_commutators": c.edge_commutators,
            "relation_rank": c.relation_rank,
            "vertex_dual_relations": c.vertex_dual_relations,
            "anticommutators": c.anticommutators,
            "non_edge_products": c.non_edge_products,
            "dual_rank": c.dual_rank,
            "d_squared": d2,
            "complementary": complementary,
            "matches_quadratic_dual": c.matches_quadratic_dual,
        }),
    );
    Ok(if complementary && c.matches_quadratic_dual {
        Status::Ok
    } else {
        Status::Failed
    })
}

/// Oracle dimensions next to formula coefficients, degree 0 upwards.
struct Comparison {
    rows: Vec<(usize, u64, BigInt)>,
    /// Degree at which the cap stopped the oracle.
    capped_at: Option<usize>,
}

impl Comparison {
    fn matches(&self) -> bool {
        self.rows.iter().all(|(_, o, f)| &BigInt::from(*o) == f)
    }

    fn first_mismatch(&self) -> Option<usize> {
        self.rows.iter().find(|(_, o, f)| &BigInt::from(*o) != f).map(|r| r.0)
    }
}

fn compare_oracle(loaded: &Loaded, max_degree: usize) -> Result<Comparison, CliError> {
    let spec = loaded.presentable()?;
    let pres = assemble_presentation(&spec)?;
    let formula = gocha_series(&loaded.spec.clone().with_truncation(max_degree.max(1)))?;
    let (dims, capped_at) = match pres.graded_dimensions(max_degree, spec.cap()) {
        Ok(d) => (d.dims, None),
        Err(PresentationError::Capped { degree, dims }) => (dims, Some(degree)),
        Err(e) => return Err(ProductError::from(e).into()),
    };
    let rows = dims
        .iter()
        .enumerate()
        .map(|(n, &o)| {
            let f = Scalar::to_integer(&formula.coefficient(n)).ok_or_else(|| {
                CliError::Input(format!("formula coefficient at degree {n} is not an integer"))
            })?;
            Ok((n, o, f))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Comparison { rows, capped_at })
}

fn comparison_report(cmp: &Comparison, report: &mut Report) -> Value {
    report.line("  n  oracle  formula");
    let mut rows = Vec::new();
    for (n, o, f) in &cmp.rows {
        let mark = if &BigInt::from(*o) == f { "" } else { "  MISMATCH" };
        report.line(format!("{n:>3}  {o:>6}  {f:>7}{mark}"));
        rows.push(json!({"degree": n, "oracle": o, "formula": int_value(f)}));
    }
    if let Some(d) = cmp.capped_at {
        report.line(format!("resource cap reached at degree {d}"));
    }
    json!({
        "rows": rows,
        "capped_at": cmp.capped_at,
        "matches": cmp.matches(),
    })
}

fn oracle(loaded: &Loaded, max_degree: usize, report: &mut Report) -> Result<Status, CliError> {
    header(&loaded.spec, report);
    let cmp = compare_oracle(loaded, max_degree)?;
    let value = comparison_report(&cmp, report);
    report.set("oracle", value);
    Ok(if !cmp.matches() {
        Status::Failed
    } else if cmp.capped_at.is_some() {
        Status::Capped
    } else {
        Status::Ok
    })
}

fn identity_report(ids: &IdentityReport, report: &mut Report) -> Value {
    let yes = |b: bool| if b { "ok" } else { "FAIL" };
    report.line("  n  euler  jennings  lazard  a>=0");
    let mut rows = Vec::new();
    for d in &ids.degrees {
        report.line(format!(
            "{:>3}  {:>5}  {:>8}  {:>6}  {:>4}",
            d.degree,
            yes(d.euler),
            yes(d.jennings),
            yes(d.lazard),
            yes(d.nonnegative)
        ));
        rows.push(json!({
            "degree": d.degree,
            "euler": d.euler,
            "jennings": d.jennings,
            "lazard": d.lazard,
            "nonnegative": d.nonnegative,
        }));
    }
    Value::Array(rows)
}

fn verify(loaded: &Loaded, max_degree: usize, report: &mut Report) -> Result<Status, CliError> {
    let spec = &loaded.spec;
    header(spec, report);
    let h = poincare_series(spec)?;
    let g = gocha_series(spec)?;
    let table = RankTable::from_gocha(&g, spec.p())?;
    set_rank_json(&h, &g, &table, Ring::Both, report);

    let ids = verify_identities(&table);
    let id_rows = identity_report(&ids, report);
    let mut checks = Map::new();
    checks.insert("identities".into(), id_rows);
    checks.insert("identities_passed".into(), Value::Bool(ids.all_passed()));
    let mut passed = ids.all_passed();

    match compare_oracle(loaded, max_degree) {
        Ok(cmp) => {
            checks.insert("oracle".into(), comparison_report(&cmp, report));
            passed &= cmp.matches();
            if let Some(n) = cmp.first_mismatch() {
                report.line(format!("oracle disagrees with the formula at degree {n}"));
            }
        }
        Err(CliError::NotPresentable { vertex, kind }) => {
            report.line(format!("oracle skipped: vertex {vertex} ({kind}) has no presentation"));
            checks.insert("oracle".into(), Value::Null);
        }
        Err(e) => return Err(e),
    }
    checks.insert("passed".into(), Value::Bool(passed));
    report.line(if passed { "verify: PASS" } else { "verify: FAIL" });
    report.set("checks", Value::Object(checks));
    Ok(if passed { Status::Ok } else { Status::Failed })
}

const EXAMPLE_H: [i64; 5] = [1, 12, 35, 16, 2];
const EXAMPLE_A: [i64; 5] = [12, 31, 168, 928, 5704];
const EXAMPLE_ORACLE_DEGREE: usize = 4;

fn paper_example(loaded: &Loaded, report: &mut Report) -> Result<Status, CliError> {
    let spec = &loaded.spec;
    header(spec, report);
    report.line("graph: path 2 - 1 - 3, a genus-2 surface group at each vertex");
    let h = poincare_series(spec)?;
    let g = gocha_series(spec)?;
    let table = RankTable::from_gocha(&g, spec.p())?;
    set_rank_json(&h, &g, &table, Ring::Both, report);

    let mut failures = Vec::new();
    let want_h: Vec<BigInt> = (0..=spec.truncation())
        .map(|n| BigInt::from(EXAMPLE_H.get(n).copied().unwrap_or(0)))
        .collect();
    let got_h: Vec<Option<BigInt>> = h.coefficients().iter().map(Scalar::to_integer).collect();
    if got_h.iter().zip(&want_h).any(|(x, y)| x.as_ref() != Some(y)) {
        failures.push("Poincaré series".to_string());
    }
    report.line(format!("h = {}", join(&EXAMPLE_H[1..])));

    let shown = table.truncation.min(EXAMPLE_A.len());
    let got_a = &table.a_zp.values()[..shown];
    if got_a.iter().zip(EXAMPLE_A).any(|(x, y)| x != &BigInt::from(y)) {
        failures.push("lower central ranks".to_string());
    }
    report.line(format!("a = {}", join(got_a)));
    report.line(format!("a_n(Z_p), n <= {}: {}", table.truncation, sequence_text(&table.a_zp)));
    report.line(format!("a_n(F_2), n <= {}: {}", table.truncation, sequence_text(&table.a_fp)));

    let census = dual_census(spec)?;
    report.line(format!(
        "d = {}, r(S) = {}, r(S!) = {}",
        census.generators, census.relation_rank, census.dual_rank
    ));
    if (census.generators, census.relation_rank) != (12, 35) || !census.counts_complementary() {
        failures.push("relation census".to_string());
    }

    let ids = verify_identities(&table);
    if !ids.all_passed() {
        failures.push(format!("identities at degree {}", ids.first_failure().unwrap_or(0)));
    }
    let oracle_spec = Loaded::example(spec.truncation());
    let cmp = compare_oracle(&oracle_spec, EXAMPLE_ORACLE_DEGREE)?;
    if !cmp.matches() || cmp.capped_at.is_some() {
        failures.push("presentation oracle".to_string());
    }
    report.line(format!(
        "oracle through degree {EXAMPLE_ORACLE_DEGREE}: {}",
        join(cmp.rows.iter().map(|r| r.1))
    ));

    let mut checks = Map::new();
    checks.insert("identities_passed".into(), Value::Bool(ids.all_passed()));
    checks.insert("oracle_matches".into(), Value::Bool(cmp.matches()));
    checks.insert("failures".into(), Value::from(failures.clone()));
    checks.insert("passed".into(), Value::Bool(failures.is_empty()));
    report.set("checks", Value::Object(checks));
    if failures.is_empty() {
        report.line("paper-example: PASS");
        Ok(Status::Ok)
    } else {
        report.line(format!("paper-example: FAIL ({})", failures.join(", ")));
        Ok(Status::Failed)
    }
}
