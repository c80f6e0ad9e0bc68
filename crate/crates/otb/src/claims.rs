//! Evaluation of the structure stated for the catalog plans.
//!
//! Each claim compares a computed value with the stated one, both rendered
//! as text. A mismatch whose computed value equals a frozen, explained value
//! is reported as a documented discrepancy; any other mismatch fails.

use std::collections::BTreeSet;
use std::fmt;

use otb_core::catalog::{self, CatalogEntry, P6_LOST_EFFECTS};
use otb_core::expansion::expand;
use otb_core::linmodel::{estimable_pencils, EstimabilityReport, Verdict};
use otb_core::relations::{alias_classes, block_relation, class_graph, verify_partition, BlockRelation};
use otb_core::{EffectModel, Field, FieldVector, Pencil, Plan, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Documented,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Documented => "DISCREPANCY-DOCUMENTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub subject: &'static str,
    pub computed: String,
    pub claimed: String,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClaimReport {
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn failures(&self) -> usize {
        self.claims.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# id\tsubject\tstatus\tcomputed\tclaimed\tnote\n");
        for c in &self.claims {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                c.id, c.subject, c.status, c.computed, c.claimed, c.note
            ));
        }
        let count = |s| self.claims.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "# pass={} documented={} fail={}\n",
            count(Status::Pass),
            count(Status::Documented),
            count(Status::Fail)
        ));
        out
    }
}

/// Frozen computed values for claims known not to hold as stated.
const DOCUMENTED: &[(&str, &str, &str)] = &[
    (
        "P3.estimable",
        "5 of 9",
        "the (B,C) cell 02 never occurs in the expanded plan, so B, C, BC, BC^2 have 1 df each; model rank 22 of 24",
    ),
    (
        "P.estimable",
        "14 of 16",
        "AC^2 and BD have 1 df each; model rank 49 of 50",
    ),
    (
        "P5.estimable",
        "20 of 25",
        "AC^2, AE, BD, CE have 1 df each and DE^2 none; model rank 64 of 68",
    ),
    (
        "P6.estimable",
        "13 of 36",
        "2 partial, 21 lost; model rank 68 leaves 50 treatment df, so at most 25 pencils are jointly estimable",
    ),
    (
        "P6.mains",
        "5 of 6",
        "F has no estimable contrast in the full model",
    ),
    (
        "P6.lost",
        "EF,EF^2,DF,DF^2,DE^2,CF,CF^2,CE,CE^2,CD,BF^2,BD^2,BC,BC^2,AF,AF^2,AE,AE^2,AD^2,AC,AC^2,AB^2",
        "22 of 30 two-factor interactions lack full estimability (BD^2 and CE^2 keep 1 df); the stated nine are all among them",
    ),
    (
        "P6.orthogonal-classes",
        "violations=13 duplicates=CF^2,BF^2,AB^2 covered=30 pairs=AB^2~CF^2,AB^2~AD^2,AB^2~EF^2,AB^2~AB^2,AB^2~CF^2,CF^2~AD^2,CF^2~EF^2,CF^2~AB^2,CF^2~CF^2,BF^2~AE^2,BF^2~BC^2,BF^2~AC^2,BF^2~BF^2",
        "AB^2, BF^2 and CF^2 are each listed in two classes, and every violating pair involves one of them",
    ),
    (
        "P26.orthogonal-classes",
        "violations=10 duplicates=none covered=34 pairs=DE^2~A,DE^2~AC,DE^2~BE^2,DE^2~D,DE^2~BD,DE^2~EF^2,DE^2~EF,DE^2~DF,DE^2~AF,DE^2~CE",
        "DE^2 is placed in the first class but is not orthogonal to any effect of the second",
    ),
    (
        "union.estimable",
        "14 of 36",
        "4 partial, 18 lost; model rank 91 of 96; a greedy jointly estimable submodel has 33",
    ),
    (
        "P5.block-words",
        "varies within blocks: BC^2E^2",
        "BC^2E is the constant word; BC^2E^2 is read as a misprint",
    ),
    (
        "P5.block-word-verdicts",
        "ConstantOnPlan,VariesWithinBlocks",
        "VariesWithinBlocks comes from the misprinted BC^2E^2; every other word is ConstantOnPlan",
    ),
    (
        "P6.alias-classes",
        "unparseable name: E^F",
        "the token E^F is malformed; P6.alias-classes-read checks it as EF^2",
    ),
    (
        "P6.headline",
        "3^6",
        "the 3^6 plan is headlined as a 3^5 experiment; every check uses m = 6",
    ),
];

fn judge(id: String, subject: &'static str, computed: String, claimed: String) -> Claim {
    let (status, note) = if computed == claimed {
        (Status::Pass, String::new())
    } else {
        match DOCUMENTED.iter().find(|(i, _, _)| *i == id) {
            Some((_, frozen, note)) if *frozen == computed => (Status::Documented, note.to_string()),
            Some((_, frozen, _)) => (Status::Fail, format!("documented value was {frozen}")),
            None => (Status::Fail, String::new()),
        }
    };
    Claim {
        id,
        subject,
        computed,
        claimed,
        status,
        note,
    }
}

fn f3() -> Field {
    Field::new(3).expect("prime")
}

fn parse_names(names: &[&str], m: usize) -> Result<Vec<Pencil>, String> {
    names
        .iter()
        .map(|n| Pencil::parse(n, m, f3()).map_err(|_| format!("unparseable name: {n}")))
        .collect()
}

fn sorted_names(ps: &[Pencil]) -> String {
    let set: BTreeSet<&Pencil> = ps.iter().collect();
    let names: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    if names.is_empty() {
        "none".into()
    } else {
        names.join(",")
    }
}

fn classes_string(classes: &[Vec<Pencil>]) -> String {
    let mut parts: Vec<String> = classes.iter().map(|c| format!("{{{}}}", sorted_names(c))).collect();
    parts.sort();
    parts.join(" ")
}

fn count_string(n: usize, of: usize) -> String {
    format!("{n} of {of}")
}

struct Expanded {
    entry: CatalogEntry,
    model: EffectModel,
    plan: Plan,
    estimability: Option<EstimabilityReport>,
}

fn prepare(name: &str, with_estimability: bool) -> Expanded {
    let entry = catalog::catalog(name).expect("catalog name");
    let model = EffectModel::mains_and_2fi(entry.plan.m(), f3());
    let v = entry.expansion.clone().expect("catalog expansion");
    let plan = expand(&entry.plan, &v).expect("catalog expansion fits");
    let estimability = with_estimability.then(|| estimable_pencils(&plan, &model).expect("model fits plan"));
    Expanded {
        entry,
        model,
        plan,
        estimability,
    }
}

fn flat_claim(plan: &Plan) -> String {
    let f = f3();
    let abc = Pencil::parse("ABC", 4, f).expect("name");
    let acd = Pencil::parse("AC^2D^2", 4, f).expect("name");
    let missing = FieldVector::parse(f, "1022").expect("point");
    let flat: BTreeSet<FieldVector> = Subspace::full(f, 4)
        .members()
        .expect("small space")
        .into_iter()
        .filter(|x| abc.level_of(x) == Ok(0) && acd.level_of(x) == Ok(0))
        .collect();
    let runs: Vec<FieldVector> = plan.runs().cloned().collect();
    let distinct: BTreeSet<FieldVector> = runs.iter().cloned().collect();
    let mut expected = flat.clone();
    let removed = expected.remove(&missing);
    if distinct.len() == runs.len() && removed && distinct == expected && flat.len() == 9 {
        "8 distinct runs = 9-point flat minus 1022".into()
    } else {
        format!(
            "{} runs, {} distinct, flat size {}, match {}",
            runs.len(),
            distinct.len(),
            flat.len(),
            distinct == expected
        )
    }
}

fn block_words_claim(entry: &CatalogEntry) -> String {
    let m = entry.plan.m();
    let mut varying = Vec::new();
    for word in entry.printed.block_words {
        match Pencil::parse(word, m, f3()) {
            Ok(p) => {
                if block_relation(&entry.plan, &p).expect("pencil fits") == BlockRelation::VariesWithinBlocks {
                    varying.push(*word);
                }
            }
            Err(_) => return format!("unparseable name: {word}"),
        }
    }
    if varying.is_empty() {
        "all constant within blocks".into()
    } else {
        format!("varies within blocks: {}", varying.join(","))
    }
}

fn block_word_verdicts(entry: &CatalogEntry) -> String {
    let m = entry.plan.m();
    let verdicts: BTreeSet<String> = entry
        .printed
        .block_words
        .iter()
        .filter_map(|w| Pencil::parse(w, m, f3()).ok())
        .map(|p| block_relation(&entry.plan, &p).expect("pencil fits").to_string())
        .collect();
    verdicts.into_iter().collect::<Vec<_>>().join(",")
}

/// Stated alias classes with the malformed token `E^F` read as `EF^2`.
fn read_classes(entry: &CatalogEntry) -> Vec<Vec<Pencil>> {
    entry
        .printed
        .alias_classes
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|n| if *n == "E^F" { "EF^2" } else { *n }).collect();
            parse_names(&names, entry.plan.m()).expect("names parse once E^F is read")
        })
        .collect()
}

fn alias_claims(entry: &CatalogEntry, model: &EffectModel, out: &mut Vec<Claim>) {
    let m = entry.plan.m();
    let computed = alias_classes(&entry.plan, model).expect("model fits plan");
    let computed_text = classes_string(&computed.classes);
    let printed: Result<Vec<Vec<Pencil>>, String> =
        entry.printed.alias_classes.iter().map(|c| parse_names(c, m)).collect();
    let id = format!("{}.alias-classes", entry.name);
    match printed {
        Ok(classes) => out.push(judge(id, "alias classes of the initial plan", computed_text, classes_string(&classes))),
        Err(e) => {
            let mut claim = judge(id, "alias classes of the initial plan", e.clone(), e);
            claim.claimed = "as printed".into();
            let documented = DOCUMENTED.iter().find(|(i, _, _)| *i == claim.id);
            claim.status = match documented {
                Some((_, frozen, _)) if *frozen == claim.computed => Status::Documented,
                _ => Status::Fail,
            };
            claim.note = documented.map(|d| d.2.to_string()).unwrap_or_default();
            out.push(claim);
            out.push(judge(
                format!("{}.alias-classes-read", entry.name),
                "alias classes with E^F read as EF^2",
                computed_text,
                classes_string(&read_classes(entry)),
            ));
        }
    }
    let mut set_aside: Vec<Pencil> = computed.constant.clone();
    set_aside.extend(computed.confounded.iter().cloned());
    let listed: BTreeSet<Pencil> = read_classes(entry).into_iter().flatten().collect();
    let stated_aside: Vec<Pencil> = model.iter().filter(|p| !listed.contains(p)).cloned().collect();
    out.push(judge(
        format!("{}.set-aside", entry.name),
        "model effects outside every alias class",
        sorted_names(&set_aside),
        sorted_names(&stated_aside),
    ));
}

fn graph_claim(entry: &CatalogEntry) -> Claim {
    let classes: Vec<Vec<Pencil>> = entry
        .printed
        .alias_classes
        .iter()
        .map(|c| parse_names(c, entry.plan.m()).expect("names parse"))
        .collect();
    let edges = class_graph(&entry.plan, &classes).expect("pencils fit");
    let fmt_edges = |e: &mut dyn Iterator<Item = (usize, usize)>| e.map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ");
    judge(
        format!("{}.class-graph", entry.name),
        "orthogonality graph on alias classes",
        fmt_edges(&mut edges.iter().map(|&(a, b)| (a + 1, b + 1))),
        fmt_edges(&mut entry.printed.class_graph.iter().copied()),
    )
}

fn partition_claim(x: &Expanded) -> Claim {
    let m = x.plan.m();
    let id = format!("{}.orthogonal-classes", x.entry.name);
    let subject = "inter-class orthogonality of the stated classes";
    let parsed: Result<Vec<Vec<Pencil>>, String> =
        x.entry.printed.orthogonal_classes.iter().map(|c| parse_names(c, m)).collect();
    let computed = match parsed {
        Ok(classes) => {
            let check = verify_partition(&x.plan, &classes).expect("pencils fit");
            if check.passed() {
                "pass".to_string()
            } else {
                let pairs: Vec<String> = check
                    .violations
                    .iter()
                    .map(|(_, a, _, b)| format!("{a}~{b}"))
                    .collect();
                format!(
                    "violations={} duplicates={} covered={} pairs={}",
                    check.violations.len(),
                    sorted_names(&check.duplicates),
                    check.covered,
                    pairs.join(",")
                )
            }
        }
        Err(e) => e,
    };
    judge(id, subject, computed, "pass".into())
}

fn confounded(plan: &Plan, model: &EffectModel) -> Vec<Pencil> {
    model
        .iter()
        .filter(|p| block_relation(plan, p).expect("pencil fits") == BlockRelation::ConfoundedWithBlock)
        .cloned()
        .collect()
}

/// Evaluates every catalog claim.
pub fn verify_catalog_claims() -> ClaimReport {
    let mut out = Vec::new();
    let shapes = [("P", 4, 2), ("P3", 3, 2), ("P5", 5, 2), ("P6", 6, 2), ("P26", 6, 2)];
    for (name, m, b) in shapes {
        let entry = catalog::catalog(name).expect("catalog name");
        out.push(judge(
            format!("{name}.shape"),
            "factors, blocks and block size of the initial plan",
            format!("m={} b={} k={}", entry.plan.m(), entry.plan.b(), entry.plan.k()),
            format!("m={m} b={b} k=4"),
        ));
    }
    out.push(judge(
        "P.flat".into(),
        "runs of P against its defining words",
        flat_claim(&catalog::plan_p()),
        "8 distinct runs = 9-point flat minus 1022".into(),
    ));

    let names = ["P3", "P", "P5", "P6", "P26"];
    let expanded: Vec<Expanded> = names.iter().map(|n| prepare(n, *n != "P26")).collect();
    for x in &expanded {
        let e = &x.entry;
        if !e.printed.block_words.is_empty() {
            out.push(judge(
                format!("{}.block-words", e.name),
                "stated defining words are constant within blocks",
                block_words_claim(e),
                "all constant within blocks".into(),
            ));
            out.push(judge(
                format!("{}.block-word-verdicts", e.name),
                "block verdicts of the well-formed defining words",
                block_word_verdicts(e),
                "ConstantOnPlan".into(),
            ));
        }
        alias_claims(e, &x.model, &mut out);
        if !e.printed.class_graph.is_empty() {
            out.push(graph_claim(e));
        }
        out.push(judge(
            format!("{}.expanded-blocks", e.name),
            "blocks of the expanded plan",
            format!("{} blocks of {}", x.plan.b(), x.plan.k()),
            format!("{} blocks of 4", e.printed.expanded_blocks),
        ));
        out.push(partition_claim(x));
        let stated_conf = parse_names(e.printed.confounded, e.plan.m()).expect("names parse");
        out.push(judge(
            format!("{}.confounded", e.name),
            "effects confounded with blocks after expansion",
            sorted_names(&confounded(&x.plan, &x.model)),
            sorted_names(&stated_conf),
        ));
        if let Some(rep) = &x.estimability {
            out.push(judge(
                format!("{}.estimable", e.name),
                "fully estimable main effects and two-factor interactions",
                count_string(rep.estimable(), rep.entries.len()),
                count_string(e.printed.estimable.0, e.printed.estimable.1),
            ));
        }
    }

    let p6 = &expanded[3];
    let p6_rep = p6.estimability.as_ref().expect("computed");
    let mains: Vec<&Pencil> = p6.model.iter().filter(|p| p.order() == 1).collect();
    let mains_ok = mains
        .iter()
        .filter(|p| p6_rep.get(p).map(|e| e.verdict) == Some(Verdict::Estimable))
        .count();
    out.push(judge(
        "P6.mains".into(),
        "main effects estimable after expanding P6",
        count_string(mains_ok, mains.len()),
        count_string(6, 6),
    ));
    let lost: Vec<Pencil> = p6_rep
        .entries
        .iter()
        .filter(|e| e.pencil.order() == 2 && e.verdict != Verdict::Estimable)
        .map(|e| e.pencil.clone())
        .collect();
    out.push(judge(
        "P6.lost".into(),
        "two-factor interactions lost after expanding P6",
        sorted_names(&lost),
        sorted_names(&parse_names(&P6_LOST_EFFECTS, 6).expect("names parse")),
    ));
    let treatment_df = p6.plan.n() - p6.plan.b();
    out.push(judge(
        "P6.df-budget".into(),
        "treatment df of 18 blocks of 4 and the effect bound",
        format!("{} df, at most {} effects", treatment_df, treatment_df / 2),
        "54 df, at most 27 effects".into(),
    ));
    out.push(judge(
        "P6.headline".into(),
        "experiment size named in the 3^6 statement",
        format!("3^{}", p6.plan.m()),
        "3^5".into(),
    ));
    for x in [&expanded[1], &expanded[2]] {
        out.push(judge(
            format!("{}.run-count", x.entry.name),
            "runs of the expanded plan against 81",
            format!("{} runs, {} fewer than 81", x.plan.n(), 81 - x.plan.n() as i64),
            "72 runs, 9 fewer than 81".into(),
        ));
    }

    let union = p6.plan.concat(&expanded[4].plan).expect("same shape");
    out.push(judge(
        "union.shape".into(),
        "expanded P6 and P26 together",
        format!("{} blocks, {} runs", union.b(), union.n()),
        "24 blocks, 96 runs".into(),
    ));
    out.push(judge(
        "union.run-count".into(),
        "runs of the combined plans against 243",
        format!("{} < 243: {}", union.n(), union.n() < 243),
        "96 < 243: true".into(),
    ));
    let union_rep = estimable_pencils(&union, &p6.model).expect("model fits plan");
    out.push(judge(
        "union.estimable".into(),
        "effects estimable from the combined plans",
        count_string(union_rep.estimable(), union_rep.entries.len()),
        count_string(35, 36),
    ));
    ClaimReport { claims: out }
}
