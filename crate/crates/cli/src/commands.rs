//! Subcommands. Each one loads a document, calls library operations and
//! returns either a report or document text.

use std::path::Path;
use std::sync::Arc;

use qgpd::bowtie::{bowtie_whq, canonical_iso, check_module_laws, verify_canonical_iso};
use qgpd::exact::{
    check_exact_factorization, enumerate_factorizations, reconstruct_matched_pair, FactorizationCandidate,
};
use qgpd::linalg::{Gf, Rational, Scalar};
use qgpd::matched_pair::{
    check_left_action, check_matched_pair, check_right_action, double_cross_product, matched_pair_identity_suite,
    mixed_associativity_suite, theta, LeftAction, MatchedPair, RightAction,
};
use qgpd::quasigroup::check_quasigroup;
use qgpd::quasigroupoid::{check_quasigroupoid, derived_identity_suite, groupoid_associativity, Quasigroupoid};
use qgpd::whq::{
    check_hopf_morphism, check_whq, derived_property_suite, hopf_report, magma_of_quasigroupoid, MagmaCoalgebra,
};
use qgpd::StructureReport;
use serde_json::json;

use crate::document::{
    emit, parse, ActionDoc, Document, QuasigroupoidDoc, Side, WhqDoc,
};
use crate::{canonical, Build, Cli, CliError, Command, Field, Format};

pub(crate) enum Produced {
    Report(StructureReport),
    Text(String),
}

/// Binds `$f` to the scalar type selected by `--field`.
macro_rules! with_field {
    ($field:expr, $f:ident => $body:expr) => {
        match $field {
            Field::Q => {
                type $f = Rational;
                $body
            }
            Field::Gf(p) => with_field!(@gf p, $f => $body; 2 3 5 7 11 13 17 19 23 29 31 101),
        }
    };
    (@gf $p:ident, $f:ident => $body:expr; $($prime:literal)*) => {
        match $p {
            $($prime => {
                type $f = Gf<$prime>;
                $body
            })*
            other => unreachable!("prime {other} passed argument validation"),
        }
    };
}

fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse(&text)
}

fn wrong_kind(doc: &Document, expected: &str) -> CliError {
    CliError::Usage(format!("expected a {expected} document, got {}", doc.kind()))
}

fn matched_pair(doc: &Document) -> Result<MatchedPair, CliError> {
    match doc {
        Document::MatchedPair(d) => d.build(),
        other => Err(wrong_kind(other, "matched-pair")),
    }
}

fn quasigroupoid(doc: &Document) -> Result<Arc<Quasigroupoid>, CliError> {
    match doc {
        Document::Quasigroupoid(d) => d.body().build(""),
        other => Err(wrong_kind(other, "quasigroupoid")),
    }
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Produced, CliError> {
    if cli.only.is_some() && matches!(cli.command, Command::Build { .. } | Command::Factorize { .. }) {
        return Err(CliError::Usage("--only applies to report commands".into()));
    }
    let field = cli.field;
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?, field).map(Produced::Report),
        Command::Suite { file } => suite(&load(file)?, field).map(Produced::Report),
        Command::CheckWhq { file } => match load(file)? {
            Document::Whq(d) => with_field!(field, F => whq_report::<F>(&d.build::<F>()?)).map(Produced::Report),
            other => Err(wrong_kind(&other, "whq")),
        },
        Command::CheckIso { file } => {
            let mp = matched_pair(&load(file)?)?;
            with_field!(field, F => check_iso::<F>(&mp)).map(Produced::Report)
        }
        Command::Factorize { file, max_arrows } => {
            let b = quasigroupoid(&load(file)?)?;
            factorize(&b, *max_arrows, cli.format).map(Produced::Text)
        }
        Command::Build { what } => build(what, field).map(Produced::Text),
    }
}

fn build(what: &Build, field: Field) -> Result<String, CliError> {
    let doc = match what {
        Build::Dcp { file } => {
            let mp = matched_pair(&load(file)?)?;
            let d = double_cross_product(&mp)?;
            Document::Quasigroupoid(QuasigroupoidDoc::of(d.quasigroupoid()))
        }
        Build::Magma { file } => {
            let b = quasigroupoid(&load(file)?)?;
            Document::Whq(with_field!(field, F => WhqDoc::of(&magma_of_quasigroupoid::<F>(&b))))
        }
        Build::Bowtie { file } => {
            let mp = matched_pair(&load(file)?)?;
            Document::Whq(with_field!(field, F => WhqDoc::of(bowtie_whq::<F>(&mp)?.magma())))
        }
    };
    Ok(emit(&doc))
}

fn whq_report<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<StructureReport, CliError> {
    Ok(check_whq(d)?.report)
}

fn action_report(d: &ActionDoc) -> Result<StructureReport, CliError> {
    let a = d.a.build("a/")?;
    let h = d.h.build("h/")?;
    let entries: Vec<_> = d.entries.iter().map(|&[x, y, z]| (x, y, z)).collect();
    Ok(match d.side {
        Side::Left => check_left_action(&LeftAction::from_entries(h, a, &entries)?),
        Side::Right => check_right_action(&RightAction::from_entries(h, a, &entries)?),
    })
}

fn validate(doc: &Document, field: Field) -> Result<StructureReport, CliError> {
    match doc {
        Document::Quasigroup(d) => Ok(check_quasigroup(&d.table, d.identity)?.report),
        Document::Quasigroupoid(d) => Ok(check_quasigroupoid(&d.body().raw())?),
        Document::Action(d) => action_report(d),
        Document::MatchedPair(d) => Ok(check_matched_pair(&d.build()?)?),
        Document::Factorization(d) => {
            let b = d.b.build("b/")?;
            let c = FactorizationCandidate::from_subsets(&b, &d.a_arrows, &d.h_arrows)?;
            Ok(check_exact_factorization(&c)?)
        }
        Document::Whq(d) => with_field!(field, F => whq_report::<F>(&d.build::<F>()?)),
    }
}

/// Marks every check of `r` as recorded.
fn recorded(mut r: StructureReport) -> StructureReport {
    for c in &mut r.checks {
        c.recorded = true;
    }
    r
}

fn magma_suite<F: Scalar>(report: &mut StructureReport, d: &MagmaCoalgebra<F>, prefix: &str) -> Result<(), CliError> {
    match check_whq(d) {
        Ok(r) => {
            report.absorb(prefix, r.report);
            report.absorb(prefix, derived_property_suite(d));
            Ok(())
        }
        Err(e) => match e.report() {
            Some(r) => {
                report.absorb(prefix, r.clone());
                Ok(())
            }
            None => Err(e.into()),
        },
    }
}

fn quasigroupoid_suite(report: &mut StructureReport, b: &Quasigroupoid, prefix: &str, field: Field) -> Result<(), CliError> {
    report.absorb(prefix, derived_identity_suite(b));
    report.absorb(prefix, recorded(groupoid_associativity(b)));
    with_field!(field, F => magma_suite(report, &magma_of_quasigroupoid::<F>(b), &format!("{prefix}magma/")))
}

fn suite(doc: &Document, field: Field) -> Result<StructureReport, CliError> {
    let mut report = StructureReport::new(format!("suite {}", doc.kind()));
    match doc {
        Document::Quasigroup(d) => {
            let check = check_quasigroup(&d.table, d.identity)?;
            report.absorb("", check.report.clone());
            if check.report.is_pass() {
                let g = qgpd::quasigroup::FiniteQuasigroup::new(d.table.clone(), d.identity)?;
                report.absorb("", g.derived_identity_suite());
                let b = qgpd::quasigroupoid::quasigroup_as_quasigroupoid(&g);
                quasigroupoid_suite(&mut report, &b, "one-object/", field)?;
            }
        }
        Document::Quasigroupoid(d) => {
            let r = check_quasigroupoid(&d.body().raw())?;
            let pass = r.is_pass();
            report.absorb("", r);
            if pass {
                quasigroupoid_suite(&mut report, &*d.body().build("")?, "", field)?;
            }
        }
        Document::Action(d) => report.absorb("", action_report(d)?),
        Document::MatchedPair(d) => matched_pair_suite(&mut report, &d.build()?, field)?,
        Document::Factorization(d) => {
            let b = d.b.build("b/")?;
            let c = FactorizationCandidate::from_subsets(&b, &d.a_arrows, &d.h_arrows)?;
            let r = check_exact_factorization(&c)?;
            let pass = r.is_pass();
            report.absorb("", r);
            if pass {
                let (mp, gamma) = reconstruct_matched_pair(&c)?;
                report.absorb("reconstructed/", check_matched_pair(&mp)?);
                let mut k = report.check("reconstructed/iso");
                k.case(gamma.is_isomorphism() && gamma.check().is_pass(), &[], || {
                    "comparison map is not an isomorphism".into()
                });
            }
        }
        Document::Whq(d) => with_field!(field, F => {
            let m = d.build::<F>()?;
            magma_suite(&mut report, &m, "")?;
            if check_whq(&m).is_ok() {
                report.absorb("hopf/", recorded(hopf_report(&m)));
            }
        }),
    }
    Ok(report)
}

fn matched_pair_suite(report: &mut StructureReport, mp: &MatchedPair, field: Field) -> Result<(), CliError> {
    let r = check_matched_pair(mp)?;
    let pass = r.is_pass();
    report.absorb("", r);
    if !pass {
        return Ok(());
    }
    report.absorb("", matched_pair_identity_suite(mp));
    let d = double_cross_product(mp)?;
    report.absorb("dcp/", check_quasigroupoid(&d.quasigroupoid().to_raw())?);
    report.absorb("dcp/", derived_identity_suite(d.quasigroupoid()));
    for (name, inc) in [("inclusion-a/", d.inclusion_a()), ("inclusion-h/", d.inclusion_h())] {
        report.absorb(name, inc.check());
        let mut k = report.check(format!("{name}injective"));
        k.case(inc.arrows_injective(), &[], || "arrow map not injective".into());
    }
    report.absorb("", mixed_associativity_suite(&d));
    report.absorb("", theta(&d).1);

    let c = FactorizationCandidate::canonical(mp)?;
    report.absorb("exact/", check_exact_factorization(&c)?);
    let (back, gamma) = reconstruct_matched_pair(&c)?;
    let mut k = report.check("round-trip");
    k.eq(back.left().entries(), mp.left().entries(), &[0]);
    k.eq(back.right().entries(), mp.right().entries(), &[1]);
    k.case(gamma.is_isomorphism(), &[2], || "comparison map is not an isomorphism".into());

    with_field!(field, F => {
        report.absorb("module/", check_module_laws::<F>(mp)?);
        report.absorb("iso/", check_iso::<F>(mp)?);
    });
    Ok(())
}

/// Isomorphism verification; for one-object pairs also the Hopf-quasigroup
/// reading of both sides and of the map.
fn check_iso<F: Scalar>(mp: &MatchedPair) -> Result<StructureReport, CliError> {
    let mut report = verify_canonical_iso::<F>(mp)?;
    if mp.a().objects() == 1 {
        let d = double_cross_product(mp)?;
        let kd = magma_of_quasigroupoid::<F>(d.quasigroupoid());
        let bt = bowtie_whq::<F>(mp)?;
        let f = canonical_iso::<F>(mp)?;
        report.absorb("hopf/source/", hopf_report(&kd));
        report.absorb("hopf/target/", hopf_report(bt.magma()));
        report.absorb("hopf/", check_hopf_morphism(&f, &kd, bt.magma())?);
    }
    Ok(report)
}

fn factorize(b: &Arc<Quasigroupoid>, max_arrows: usize, format: Format) -> Result<String, CliError> {
    let found = enumerate_factorizations(b, max_arrows)?;
    Ok(match format {
        Format::Human => {
            let mut out: String = found.iter().map(|c| format!("factorization {c}\n")).collect();
            out.push_str(&format!("{} factorizations\n", found.len()));
            out
        }
        Format::Machine => {
            let list: Vec<_> = found
                .iter()
                .map(|c| {
                    let (a, h) = c.subsets();
                    json!({"a_arrows": a, "h_arrows": h})
                })
                .collect();
            canonical::emit(&json!({"count": found.len(), "factorizations": list}))
        }
    })
}
