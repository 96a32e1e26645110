//! Executable checks of the normalization/relation correspondence over a
//! corpus of structure files.
//!
//! Each suite enumerates the congruences and subobjects of one structure and
//! records one [`Check`] per claim, with the first counterexample and a CLI
//! command that replays it.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::par::{self, Exec};
use crate::relations::DEFAULT_MAX_CARRIER;
use crate::structures::{load_structure, validate_structure, FiniteStructure, ParseError};

mod report;
mod suites;

pub use report::{Check, VerificationReport, Witness};
pub use suites::{is_conjugation_closed, normal_subobjects};

use suites::Analysis;

/// A named structure, with the path used in replay commands.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub source: String,
    pub structure: Arc<FiniteStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
    #[error("{path}: invalid structure: {message}")]
    Invalid { path: String, message: String },
}

impl Instance {
    pub fn new(name: impl Into<String>, structure: FiniteStructure) -> Self {
        let name = name.into();
        Instance { source: name.clone(), name, structure: Arc::new(structure) }
    }

    /// Reads, parses and validates a structure file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, InstanceError> {
        let path = path.as_ref();
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| InstanceError::Io { path: shown.clone(), message: e.to_string() })?;
        let structure =
            load_structure(&text).map_err(|error| InstanceError::Parse { path: shown.clone(), error })?;
        let report = validate_structure(&structure);
        if let Some(v) = report.violations.first() {
            return Err(InstanceError::Invalid { path: shown, message: v.to_string() });
        }
        let name = path.file_stem().map_or(shown.clone(), |s| s.to_string_lossy().into_owned());
        Ok(Instance { name, source: shown, structure: Arc::new(structure) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub max_carrier: usize,
    pub exec: Exec,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_carrier: DEFAULT_MAX_CARRIER, exec: Exec::default() }
    }
}

/// The suites, in the order [`run_instance`] runs them.
pub const SUITES: [&str; 5] = ["normalization", "rel", "triangles", "equivalence", "context"];

fn run_suite(name: &str, a: &Analysis) -> Vec<Check> {
    match name {
        "normalization" => suites::normalization(a),
        "rel" => suites::rel_suite(a),
        "triangles" => suites::triangles(a),
        "equivalence" => suites::equivalence(a),
        "context" => suites::context_specific(a),
        other => panic!("unknown suite {other}"),
    }
}

fn single(suite: &str, instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let a = Analysis::new(instance, opts);
    let checks = run_suite(suite, &a);
    VerificationReport {
        suite: suite.into(),
        instance: instance.name.clone(),
        checks,
        ms: start.elapsed().as_millis() as u64,
    }
}

pub fn suite_normalization(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    single("normalization", instance, opts)
}

pub fn suite_rel(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    single("rel", instance, opts)
}

pub fn suite_triangles(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    single("triangles", instance, opts)
}

pub fn suite_equivalence(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    single("equivalence", instance, opts)
}

pub fn suite_context_specific(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    single("context", instance, opts)
}

/// Every suite on one instance, as one report with ids `suite/check`.
pub fn run_instance(instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let a = Analysis::new(instance, opts);
    let mut checks = Vec::new();
    for suite in SUITES {
        for mut c in run_suite(suite, &a) {
            c.id = format!("{suite}/{}", c.id);
            checks.push(c);
        }
    }
    VerificationReport {
        suite: "all".into(),
        instance: instance.name.clone(),
        checks,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// The report for a file that failed to load.
pub fn load_failure(path: &Path, error: &InstanceError) -> VerificationReport {
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    VerificationReport {
        suite: "all".into(),
        instance: name,
        checks: vec![Check::failed(
            "load",
            "the file parses and satisfies the axioms of its context",
            Witness { detail: error.to_string(), replay: format!("eqrel validate {}", path.display()) },
        )],
        ms: 0,
    }
}

/// One report per path, in order. Files that fail to load yield a failing
/// `load` check; the rest of the batch is unaffected.
pub fn run_all<P: AsRef<Path> + Sync>(paths: &[P], opts: &SuiteOptions) -> Vec<VerificationReport> {
    par::map(opts.exec, paths, |p| {
        let p = p.as_ref();
        match Instance::load(p) {
            Ok(instance) => run_instance(&instance, opts),
            Err(e) => load_failure(p, &e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builders::*;
    use crate::structures::Context;

    fn assert_passes(report: &VerificationReport) {
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn s3_normalization() {
        let r = suite_normalization(&Instance::new("s3", symmetric3()), &SuiteOptions::default());
        assert_passes(&r);
        assert_eq!(r.check("nor-is-normal").unwrap().cases, 3);
    }

    #[test]
    fn every_suite_on_each_context() {
        let opts = SuiteOptions::default();
        for (name, x) in [
            ("z4", cyclic(4)),
            ("q8", quaternion()),
            ("z2-connected", connected_groupoid(2, &cyclic(2))),
            ("mixed", disjoint_union(&[codiscrete_groupoid(2), group_as_groupoid(&cyclic(2))])),
            ("c2", cyclic_in(Context::GpCirc, 2)),
            ("c-s3", symmetric3_in(Context::GpCirc)),
            ("empty", empty_algebra()),
        ] {
            assert_passes(&run_instance(&Instance::new(name, x), &opts));
        }
    }

    #[test]
    fn gpcirc_uniqueness_is_not_asserted() {
        let r = suite_rel(&Instance::new("c2", cyclic_in(Context::GpCirc, 2)), &SuiteOptions::default());
        assert!(r.check("witness-unique").is_none());
        let r = suite_context_specific(&Instance::new("c3", cyclic_in(Context::GpCirc, 3)), &SuiteOptions::default());
        assert_eq!(r.check("two-normal-subobjects").unwrap().cases, 2);
    }

    #[test]
    fn bound_exceeded_is_a_failing_check() {
        let opts = SuiteOptions { max_carrier: 3, exec: Exec::Sequential };
        let r = suite_rel(&Instance::new("z4", cyclic(4)), &opts);
        assert!(!r.passed());
        assert_eq!(r.checks[0].id, "enumeration-bound");
        // the groupoid conjugation check needs no enumeration
        let g = Instance::new("g", connected_groupoid(2, &cyclic(2)));
        assert_passes(&suite_context_specific(&g, &opts));
    }

    #[test]
    fn conjugation_closure_examples() {
        let g = connected_groupoid(2, &symmetric3());
        // loops at object 0 are (0,0,h) at indices 0..6; A3 at 0 is {0,4,5}
        let ids = g.groupoid().unwrap().ids.clone();
        let mut members: Vec<usize> = ids.clone();
        members.extend([4, 5]);
        members.sort_unstable();
        assert!(!is_conjugation_closed(&g, &members));
        // the same vertex subgroup at both objects
        let at1 = 3 * 6;
        members.extend([at1 + 4, at1 + 5]);
        members.sort_unstable();
        assert!(is_conjugation_closed(&g, &members));
    }

    #[test]
    fn run_all_isolates_load_failures() {
        let dir = std::env::temp_dir().join(format!("eqrel-theorems-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("z2.alg");
        let bad = dir.join("bad.alg");
        std::fs::write(&good, crate::structures::save_structure(&cyclic(2))).unwrap();
        std::fs::write(&bad, "context gp\ncarrier 2\nop mul 2\n0 1\n").unwrap();
        let reports = run_all(&[good, bad], &SuiteOptions::default());
        assert_eq!(reports.len(), 2);
        assert_passes(&reports[0]);
        assert!(!reports[1].passed());
        assert_eq!(reports[1].checks[0].id, "load");
        assert!(run_all::<&Path>(&[], &SuiteOptions::default()).is_empty());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
