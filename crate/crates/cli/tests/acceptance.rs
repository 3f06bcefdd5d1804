//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Every expected value is computed here or in
//! `testkit` from the inputs, never taken from the translator.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rdb2owl_core::cdm::build_cdm;
use rdb2owl_core::convert::{convert_recordsets, ConvertOptions};
use rdb2owl_core::ingest::{parse_ddl, Recordset};
use rdb2owl_core::mtrdb::{validate_mtrdb, ExtractOptions, Field, ForeignKey, Mtrdb, Relation, Relationship};
use rdb2owl_core::mtrdb::{extract_mtrdb, Cardinality, FkCardinality};
use rdb2owl_core::owl::{serialize_rdfxml, Iri, OwlAxiom, OwlDocument};
use rdb2owl_core::{Code, Diagnostics, Location};
use rust_decimal::Decimal;
use testkit::schemagen::{random_schema, GenLimits};
use testkit::{owl, parse_rdfxml, parse_turtle, Term, Triple, RDF, XSD};

use common::{error_fixtures, expected, fixture_argv, name, run_argv, schema_fixtures, stderr_lines};

const BASE: &str = "http://example.org/ontology#";

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figure3() -> std::path::PathBuf {
    testkit::fixtures_dir().join("schemas/figure3")
}

/// Run the binary's entry point and parse its standard output.
fn translate(args: &[String], turtle: bool) -> Result<(String, Vec<Triple>), String> {
    let mut args = args.to_vec();
    args.extend(["--format".into(), if turtle { "turtle" } else { "rdfxml" }.into()]);
    let out = run_argv(&args);
    if out.code != 0 {
        return Err(format!("exit {}: {}", out.code, out.stderr));
    }
    let triples = if turtle {
        parse_turtle(&out.stdout)
    } else {
        parse_rdfxml(&out.stdout)
    }
    .map_err(|e| format!("output does not parse: {e}"))?;
    Ok((out.stdout, triples))
}

fn declared(triples: &[Triple], kind: &str) -> BTreeSet<String> {
    testkit::instances_of(triples, &owl(kind))
        .into_iter()
        .filter_map(|t| t.iri().map(str::to_string))
        .collect()
}

fn schema_only(dir: &Path) -> Vec<String> {
    vec!["--ddl".into(), dir.join("schema.sql").display().to_string()]
}

fn c1_figure3_counts() -> Check {
    let started = Instant::now();
    let (_, t) = translate(&schema_only(&figure3()), false)?;
    let elapsed = started.elapsed();
    let classes = declared(&t, "Class");
    let dprops = declared(&t, "DatatypeProperty");
    let oprops = declared(&t, "ObjectProperty");
    let inverse_of = owl("inverseOf");
    let inverses: BTreeSet<&str> = t.iter().filter(|x| x.p == inverse_of).filter_map(|x| x.s.iri()).collect();
    let named: BTreeSet<String> = ["Product", "Customer", "Employee", "Order", "Store"]
        .iter()
        .map(|c| format!("{BASE}{c}"))
        .collect();
    ensure(classes == named, || format!("classes {classes:?}"))?;
    ensure(dprops.len() == 13, || format!("{} datatype properties", dprops.len()))?;
    ensure(oprops.len() == 8, || format!("{} object properties", oprops.len()))?;
    ensure(inverses.len() == 4 && inverses.iter().all(|i| oprops.contains(*i)), || {
        format!("{} named inverses", inverses.len())
    })?;
    ensure(!classes.contains(&format!("{BASE}EmployeeStore")), || "junction became a class".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))
}

/// Canonical lexical form per declared column type, derived independently.
fn canon(ty: &str, cell: &str) -> String {
    match ty {
        "INT" => i64::from_str(cell.trim()).expect("integer cell").to_string(),
        "DECIMAL2" => {
            let d = Decimal::from_str(cell.trim()).expect("decimal cell");
            let n = d.normalize();
            let keep = d.scale().min(2);
            if n.scale() < keep {
                let mut r = n;
                r.rescale(keep);
                r.to_string()
            } else {
                n.to_string()
            }
        }
        _ => cell.to_string(),
    }
}

fn xsd_for(ty: &str) -> String {
    match ty {
        "INT" => format!("{XSD}integer"),
        "DECIMAL2" => format!("{XSD}decimal"),
        "DATE" => format!("{XSD}date"),
        _ => format!("{XSD}string"),
    }
}

struct TableSpec {
    name: &'static str,
    /// (column, type); FK-only columns are typed too but carry no literal.
    columns: &'static [(&'static str, &'static str)],
    pk: &'static [&'static str],
    /// (column, referenced table, property local name)
    fks: &'static [(&'static str, &'static str, &'static str)],
}

const FIG3: &[TableSpec] = &[
    TableSpec {
        name: "Product",
        columns: &[("ProductID", "INT"), ("ProductName", "VARCHAR"), ("ProductPrice", "DECIMAL2")],
        pk: &["ProductID"],
        fks: &[],
    },
    TableSpec {
        name: "Customer",
        columns: &[("CustomerID", "INT"), ("CustomerName", "VARCHAR"), ("CustomerAddress", "VARCHAR")],
        pk: &["CustomerID"],
        fks: &[],
    },
    TableSpec {
        name: "Employee",
        columns: &[("EmployeeID", "INT"), ("EmployeeName", "VARCHAR")],
        pk: &["EmployeeID"],
        fks: &[],
    },
    TableSpec {
        name: "Order",
        columns: &[
            ("OrderID", "INT"),
            ("OrderDate", "DATE"),
            ("OrderQuantity", "INT"),
            ("CustomerID", "INT"),
            ("ProductID", "INT"),
            ("EmployeeID", "INT"),
        ],
        pk: &["OrderID"],
        fks: &[
            ("CustomerID", "Customer", "hasCustomer"),
            ("ProductID", "Product", "hasProduct"),
            ("EmployeeID", "Employee", "hasEmployee"),
        ],
    },
    TableSpec {
        name: "Store",
        columns: &[("StoreID", "INT"), ("StoreName", "VARCHAR")],
        pk: &["StoreID"],
        fks: &[],
    },
];

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn c2_figure3_data() -> Check {
    let dir = figure3();
    let started = Instant::now();
    let mut args = schema_only(&dir);
    args.extend(["--data".into(), dir.join("data").display().to_string()]);
    let (_, t) = translate(&args, false)?;
    let elapsed = started.elapsed();

    let oprops = declared(&t, "ObjectProperty");
    let dprops = declared(&t, "DatatypeProperty");
    let rdf_type = format!("{RDF}type");
    let class_iris: BTreeSet<String> = FIG3.iter().map(|s| format!("{BASE}{}", s.name)).collect();
    let individuals: BTreeSet<&str> = t
        .iter()
        .filter(|x| x.p == rdf_type && x.o.iri().is_some_and(|o| class_iris.contains(o)))
        .filter_map(|x| x.s.iri())
        .collect();
    let object_assertions: Vec<&Triple> = t.iter().filter(|x| oprops.contains(&x.p)).collect();
    ensure(individuals.len() == 13, || format!("{} individuals", individuals.len()))?;
    ensure(object_assertions.len() == 15, || format!("{} object assertions", object_assertions.len()))?;

    // Row walk: every row has exactly one individual carrying exactly its
    // literals and links.
    let mut seen = BTreeSet::new();
    for spec in FIG3 {
        let (header, rows) = read_csv(&dir.join(format!("data/{}.csv", spec.name)));
        for row in rows {
            let cell = |c: &str| row[header.iter().position(|h| h == c).unwrap()].clone();
            let subject = format!(
                "{BASE}{}_{}",
                spec.name,
                spec.pk.iter().map(|c| canon("INT", &cell(c))).collect::<Vec<_>>().join("_")
            );
            ensure(individuals.contains(subject.as_str()), || format!("no individual {subject}"))?;
            seen.insert(subject.clone());
            let mut want: BTreeSet<(String, Term)> = BTreeSet::new();
            for (col, ty) in spec.columns {
                if spec.fks.iter().any(|f| f.0 == *col) || cell(col).is_empty() {
                    continue;
                }
                want.insert((
                    format!("{BASE}{col}"),
                    Term::Literal {
                        lexical: canon(ty, &cell(col)),
                        datatype: xsd_for(ty),
                    },
                ));
            }
            for (col, target, prop) in spec.fks {
                want.insert((format!("{BASE}{prop}"), Term::Iri(format!("{BASE}{target}_{}", canon("INT", &cell(col))))));
            }
            let got: BTreeSet<(String, Term)> = t
                .iter()
                .filter(|x| x.s.iri() == Some(subject.as_str()))
                .filter(|x| dprops.contains(&x.p) || (oprops.contains(&x.p) && !x.p.ends_with("employeeStore")))
                .map(|x| (x.p.clone(), x.o.clone()))
                .collect();
            ensure(got == want, || format!("{subject}: got {got:?}, want {want:?}"))?;
        }
    }
    let (header, rows) = read_csv(&dir.join("data/EmployeeStore.csv"));
    let junction_prop = format!("{BASE}employeeStore");
    for row in rows {
        let e = &row[header.iter().position(|h| h == "EmployeeID").unwrap()];
        let s = &row[header.iter().position(|h| h == "StoreID").unwrap()];
        let triple = Triple {
            s: Term::Iri(format!("{BASE}Employee_{e}")),
            p: junction_prop.clone(),
            o: Term::Iri(format!("{BASE}Store_{s}")),
        };
        ensure(t.iter().filter(|x| **x == triple).count() == 1, || format!("missing {triple}"))?;
    }
    ensure(seen.len() == individuals.len(), || "individuals without a row".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))
}

fn c3_cross_serializer() -> Check {
    let fixtures = schema_fixtures();
    ensure(fixtures.len() >= 10, || format!("only {} fixtures", fixtures.len()))?;
    for dir in &fixtures {
        for extra in [&[][..], &["--profile=owl2", "--emit-length"][..]] {
            let mut args = fixture_argv(dir);
            args.extend(extra.iter().map(|s| s.to_string()));
            let (_, x) = translate(&args, false).map_err(|e| format!("{}: {e}", name(dir)))?;
            let (_, t) = translate(&args, true).map_err(|e| format!("{}: {e}", name(dir)))?;
            let (cx, ct) = (testkit::canonical(&x), testkit::canonical(&t));
            ensure(cx == ct, || {
                let only_x: Vec<_> = cx.iter().filter(|l| !ct.contains(l)).take(3).collect();
                let only_t: Vec<_> = ct.iter().filter(|l| !cx.contains(l)).take(3).collect();
                format!("{} {extra:?}: rdfxml-only {only_x:?}, turtle-only {only_t:?}", name(dir))
            })?;
        }
    }
    Ok(())
}

fn c4_determinism() -> Check {
    let args = fixture_argv(&figure3());
    for turtle in [false, true] {
        let (first, _) = translate(&args, turtle)?;
        for i in 1..100 {
            let mut a = args.clone();
            a.extend(["--format".into(), if turtle { "turtle" } else { "rdfxml" }.into()]);
            let out = run_argv(&a);
            ensure(out.stdout == first, || format!("run {i} differs (turtle: {turtle})"))?;
        }
    }
    Ok(())
}

fn count_restrictions(t: &[Triple]) -> usize {
    testkit::restriction_kinds(t).values().map(Vec::len).sum()
}

fn c5_conservation() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut shapes = [0usize; 5];
    for n in 0..200 {
        let s = random_schema(&mut rng, GenLimits::default());
        let e = s.expected();
        for (slot, v) in shapes.iter_mut().zip([e.junctions, e.demoted_junctions, e.keyless, e.individuals, e.object_assertions]) {
            *slot += v;
        }
        let dir = tmp.path().join(format!("s{n}"));
        std::fs::create_dir_all(dir.join("data")).unwrap();
        std::fs::write(dir.join("schema.sql"), s.to_ddl()).unwrap();
        let data = if n % 2 == 0 {
            for (file, text) in s.to_csv_files() {
                std::fs::write(dir.join("data").join(file), text).unwrap();
            }
            dir.join("data")
        } else {
            std::fs::write(dir.join("data.sql"), s.to_inserts()).unwrap();
            dir.join("data.sql")
        };
        let fail = |what: &str| format!("schema {n}: {what}\n{}", s.to_ddl());

        // Model-level identities.
        let mut d = Diagnostics::new();
        let ast = parse_ddl(&s.to_ddl(), &mut d).map_err(|_| fail(&format!("parse: {d:?}")))?;
        let m = extract_mtrdb(&ast, ExtractOptions::default(), &mut d).map_err(|_| fail("extract"))?;
        ensure(validate_mtrdb(&m).is_empty(), || fail("invalid metadata"))?;
        let cdm = build_cdm(&m, &mut d).map_err(|_| fail("cdm"))?;
        let junctions = cdm.junction_relations.len();
        ensure(cdm.classes.len() + junctions == m.relations.len(), || fail("class-count identity"))?;
        let fk_only: usize = m
            .relations
            .iter()
            .filter(|r| !cdm.is_junction(&r.r_n))
            .map(|r| r.r_f.iter().filter(|f| r.is_fk_column(&f.f_n) && !r.is_pk_column(&f.f_n)).count())
            .sum();
        let junction_cols: usize =
            m.relations.iter().filter(|r| cdm.is_junction(&r.r_n)).map(|r| r.r_f.len()).sum();
        ensure(cdm.attribute_count() + fk_only + junction_cols == m.field_count(), || {
            fail("attribute conservation")
        })?;
        let base_fks: usize = m.relations.iter().filter(|r| !cdm.is_junction(&r.r_n)).map(|r| r.r_fk.len()).sum();
        ensure(cdm.relationships.len() == base_fks + junctions, || fail("relationship count"))?;
        // ...and they agree with the generator's own tally.
        ensure(m.relations.len() == e.relations && m.field_count() == e.fields, || fail("relations/fields"))?;
        ensure(cdm.classes.len() == e.classes && junctions == e.junctions, || {
            fail(&format!("classes {} / junctions {junctions} vs {e:?}", cdm.classes.len()))
        })?;
        ensure(cdm.attribute_count() == e.attributes && fk_only == e.fk_only_columns, || fail("attributes"))?;
        ensure(cdm.relationships.len() == e.relationships, || fail("relationships"))?;

        // Serialized output, counted from the triples.
        let args = vec![
            "--ddl".to_string(),
            dir.join("schema.sql").display().to_string(),
            "--data".into(),
            data.display().to_string(),
        ];
        let (_, t) = translate(&args, n % 4 < 2).map_err(|x| fail(&x))?;
        let classes = declared(&t, "Class");
        let dprops = declared(&t, "DatatypeProperty");
        let oprops = declared(&t, "ObjectProperty");
        ensure(classes.len() == e.classes, || fail("declared classes"))?;
        ensure(dprops.len() == e.attributes, || fail("declared datatype properties"))?;
        ensure(oprops.len() == 2 * e.relationships, || fail("declared object properties"))?;
        ensure(count_restrictions(&t) == e.restrictions, || {
            fail(&format!("restrictions {} vs {}", count_restrictions(&t), e.restrictions))
        })?;
        let default_value = format!("{BASE}defaultValue");
        ensure(t.iter().filter(|x| x.p == default_value).count() == e.default_annotations, || {
            fail("default annotations")
        })?;
        let rdf_type = format!("{RDF}type");
        let individuals = t
            .iter()
            .filter(|x| x.p == rdf_type && x.o.iri().is_some_and(|o| classes.contains(o)))
            .count();
        ensure(individuals == e.individuals, || fail(&format!("individuals {individuals} vs {}", e.individuals)))?;
        let links = t.iter().filter(|x| oprops.contains(&x.p)).count();
        ensure(links == e.object_assertions, || {
            fail(&format!("object assertions {links} vs {}", e.object_assertions))
        })?;
        let mut literals: BTreeMap<String, usize> = BTreeMap::new();
        for x in t.iter().filter(|x| dprops.contains(&x.p)) {
            if let Term::Literal { lexical, .. } = &x.o {
                *literals.entry(lexical.clone()).or_default() += 1;
            }
        }
        ensure(literals == e.literal_values, || {
            let missing: Vec<_> = e.literal_values.iter().filter(|(k, v)| literals.get(*k) != Some(v)).take(5).collect();
            fail(&format!("literal values differ; expected but not found: {missing:?}"))
        })?;
    }
    let elapsed = started.elapsed();
    // A corpus without these shapes would make the identities vacuous.
    ensure(shapes.iter().all(|&v| v > 0), || {
        format!("junctions/demoted/keyless/individuals/links = {shapes:?}")
    })?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))
}

fn c6_validity() -> Check {
    let mut files = 0;
    for dir in schema_fixtures() {
        for extra in [&[][..], &["--profile=owl2", "--emit-length"][..]] {
            let mut args = fixture_argv(&dir);
            args.extend(extra.iter().map(|s| s.to_string()));
            let (xml, t) = translate(&args, false).map_err(|e| format!("{}: {e}", name(&dir)))?;
            testkit::xml_well_formed(&xml).map_err(|e| format!("{}: {e}", name(&dir)))?;
            let closure = testkit::closure_violations(&t);
            ensure(closure.is_empty(), || format!("{}: {closure:?}", name(&dir)))?;
            let card = testkit::cardinality_violations(&t);
            ensure(card.is_empty(), || format!("{}: {card:?}", name(&dir)))?;
            files += 1;
        }
    }
    ensure(files >= 20, || format!("only {files} documents checked"))
}

/// Codes that no input file can reach: they guard invariants of values
/// built through the library API, so their fixtures are built here.
fn api_fixtures() -> Vec<(Code, Location, Vec<Code>)> {
    let field = |n: &str| Field {
        f_n: n.into(),
        f_t: rdb2owl_core::ingest::TypeKeyword::Int,
        f_l: None,
        scale: None,
        f_nl: false,
        f_d: None,
    };
    let relation = |n: &str, fields: &[&str], fks: Vec<ForeignKey>| Relation {
        r_n: n.into(),
        r_f: fields.iter().map(|f| field(f)).collect(),
        r_pk: vec![fields[0].to_string()],
        r_fk: fks,
        r_uk: Vec::new(),
        surrogate_pk: false,
    };
    let mut out = Vec::new();

    let dup = Mtrdb {
        relations: vec![relation("A", &["id"], vec![]), relation("a", &["id"], vec![])],
        relationships: vec![],
    };
    out.push((Code::DuplicateRelation, Location::relation("a"), validate_mtrdb(&dup).iter().map(|d| d.code).collect()));

    let orphan = Mtrdb {
        relations: vec![relation("A", &["id"], vec![]), relation("B", &["id"], vec![])],
        relationships: vec![Relationship {
            r_pk_source: vec!["id".into()],
            source: "A".into(),
            r_fk_target: vec!["id".into()],
            target: "B".into(),
            ca: FkCardinality {
                holder_to_referenced: Cardinality::EXACTLY_ONE,
                referenced_to_holder: Cardinality::MANY,
            },
            self_referential: false,
        }],
    };
    let found = validate_mtrdb(&orphan);
    out.push((
        Code::OrphanRelationship,
        found.iter().find(|d| d.code == Code::OrphanRelationship).map_or(Location::None, |d| d.location.clone()),
        found.iter().map(|d| d.code).collect(),
    ));
    // Location checked separately below for the orphan: it must name B.

    let base = Iri::parse_base(BASE).unwrap();
    let mut doc = OwlDocument::new(base.clone());
    doc.axioms.push(OwlAxiom::ClassDecl {
        iri: Iri::new_unchecked(format!("{BASE}1st")),
    });
    let codes = serialize_rdfxml(&doc).err().map(|d| vec![d.code]).unwrap_or_default();
    let loc = serialize_rdfxml(&doc).err().map_or(Location::None, |d| d.location);
    out.push((Code::InvalidNcName, loc, codes));

    let mut d = Diagnostics::new();
    let ast = parse_ddl("CREATE TABLE T (id INT PRIMARY KEY);", &mut d).unwrap();
    let m = extract_mtrdb(&ast, ExtractOptions::default(), &mut d).unwrap();
    let cdm = build_cdm(&m, &mut d).unwrap();
    let doc = OwlDocument::new(base);
    let mut ghost = Recordset::new("Ghost", vec!["id".into()]);
    ghost.rows.push(vec![Some("1".into())]);
    let _ = convert_recordsets(&[ghost], &cdm, doc, ConvertOptions::default(), &mut d);
    let loc = d.with_code(Code::UnknownRelation).next().map_or(Location::None, |x| x.location.clone());
    out.push((Code::UnknownRelation, loc, d.iter().map(|x| x.code).collect()));
    out
}

fn c7_error_paths() -> Check {
    let mut covered: BTreeSet<&'static str> = BTreeSet::new();
    for dir in error_fixtures() {
        let (code, lines) = expected(&dir);
        let out = run_argv(&fixture_argv(&dir));
        let got = stderr_lines(&dir, &out.stderr);
        ensure(out.code == code && got == lines, || {
            format!("{}: exit {} with {got:?}, expected exit {code} with {lines:?}", name(&dir), out.code)
        })?;
        let fixture_code = Code::ALL
            .iter()
            .find(|c| name(&dir).starts_with(c.as_str()))
            .ok_or_else(|| format!("{} names no code", name(&dir)))?;
        ensure(lines.iter().any(|l| l.contains(&format!("[{}]", fixture_code.as_str()))), || {
            format!("{} does not report {fixture_code}", name(&dir))
        })?;
        covered.insert(fixture_code.as_str());
    }
    for (code, loc, found) in api_fixtures() {
        ensure(found.contains(&code), || format!("{code} not reported: {found:?}"))?;
        let want = match code {
            Code::DuplicateRelation => Location::relation("a"),
            Code::OrphanRelationship => Location::relation("B"),
            Code::InvalidNcName => Location::None,
            _ => Location::relation("Ghost"),
        };
        ensure(loc == want, || format!("{code} located at {loc:?}, expected {want:?}"))?;
        covered.insert(code.as_str());
    }
    let missing: Vec<&str> = Code::ALL.iter().map(|c| c.as_str()).filter(|c| !covered.contains(c)).collect();
    ensure(missing.is_empty(), || format!("codes without a fixture: {missing:?}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 figure-3 schema counts", c1_figure3_counts),
        ("2 figure-3 data conversion and round trip", c2_figure3_data),
        ("3 RDF/XML and Turtle triple multisets agree", c3_cross_serializer),
        ("4 100 runs byte-identical", c4_determinism),
        ("5 conservation on 200 random schemas", c5_conservation),
        ("6 output validity over the corpus", c6_validity),
        ("7 every diagnostic code covered with locations", c7_error_paths),
    ];
    let mut failed = 0;
    for (label, check) in criteria {
        let started = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {label} ({:.2?})", started.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {label}: {e}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
