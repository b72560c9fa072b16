//! Golden corpus of canonical `.sesq` files.
//!
//! Every file under `tests/golden/` is the canonical serialization of a
//! document assembled here, mostly from the crate's own emitters.  The
//! tests pin three properties: the files match what the emitters produce
//! today, parsing a file and serializing it back reproduces the exact
//! bytes, and each file elaborates into a model with the expected shape.

use std::fs;
use std::path::PathBuf;

use sesq_core::algebra::{presets, ComplexCarrier};
use sesq_core::cellstruct::validate_structure;
use sesq_core::constructions::{self, fixtures};
use sesq_core::pseudocat::{check_pseudocategory, CheckMode};
use sesq_dsl::ast::{Block, DeriveDirective, KeyRow, Span};
use sesq_dsl::{elaborate, emit, parse, serialize, Model, SpecDocument};

fn derive(builder: &str, args: &[&str]) -> Block {
    Block::Derive(DeriveDirective {
        span: Span::default(),
        builder: builder.into(),
        args: args.iter().map(|s| s.to_string()).collect(),
        rows: Vec::new(),
    })
}

fn keyed(key: &str, values: &[&str]) -> KeyRow {
    KeyRow {
        span: Span::default(),
        key: key.into(),
        values: values.iter().map(|s| s.to_string()).collect(),
    }
}

fn doc(blocks: Vec<Block>) -> String {
    serialize(&SpecDocument { blocks })
}

/// The corpus contents, keyed by file name.
fn corpus() -> Vec<(&'static str, String)> {
    let mut out = Vec::new();

    out.push((
        "f1.sesq",
        serialize(&emit::structure_document(&fixtures::f1()).unwrap()),
    ));
    out.push((
        "f2.sesq",
        serialize(&emit::structure_document(&fixtures::f2()).unwrap()),
    ));

    // Category table plus a derive line, instead of spelled-out cells.
    let mut diamond = emit::structure_document(&fixtures::diamond_discrete()).unwrap();
    diamond.blocks.retain(|b| matches!(b, Block::Category(_)));
    diamond.blocks.push(derive("discrete", &[]));
    out.push(("diamond.sesq", serialize(&diamond)));

    out.push((
        "conj_z3.sesq",
        doc(vec![
            emit::group_block("z3", &presets::cyclic(3)),
            derive("conjugation", &["z3"]),
        ]),
    ));

    let mut blocks = emit::xmod_blocks("z2triv", &presets::xmod_by_name("z2triv").unwrap());
    blocks.push(derive("derivations", &["z2triv"]));
    out.push(("deriv_z2.sesq", doc(blocks)));

    let mut blocks = emit::complex_blocks("f3", &presets::complex_z2_id_zero());
    blocks.push(derive("homotopies", &["f3"]));
    out.push(("f3.sesq", doc(blocks)));

    let mut blocks = vec![emit::intcat_block("arrow", &presets::intcat_arrow())];
    blocks.push(derive("internal", &["arrow"]));
    out.push(("intcat.sesq", doc(blocks)));

    let mut blocks = emit::xmod_blocks("z3inv", &presets::xmod_by_name("z3inv").unwrap());
    blocks.push(derive("group_pseudocat", &["z3inv", "1"]));
    out.push(("grp_z3.sesq", doc(blocks)));

    // Two copies of Z3 -id-> Z3 -0-> Z3; the homotopies have identity
    // degree-one parts and every other map defaults to zero.
    let z3 = presets::cyclic(3);
    let chain = ComplexCarrier::new(
        [z3.clone(), z3.clone(), z3.clone()],
        vec![0, 1, 2],
        vec![0, 0, 0],
    )
    .unwrap();
    let mut blocks = emit::complex_blocks("ca", &chain);
    blocks.extend(emit::complex_blocks("cb", &chain));
    blocks.push(Block::Derive(DeriveDirective {
        span: Span::default(),
        builder: "additive_pseudocat".into(),
        args: Vec::new(),
        rows: vec![
            keyed("a", &["ca"]),
            keyed("b", &["cb"]),
            keyed("lam1", &["0", "1", "2"]),
            keyed("rho1", &["0", "1", "2"]),
        ],
    }));
    out.push(("additive.sesq", doc(blocks)));

    // Smallest possible pseudocategory, written out in full by hand.
    let trivial = "category {\n  object A\n  id A = idA\n}\n\
                   cells {\n  cell z : idA => idA\n  zero idA = z\n  plus z + z = z\n\
                   \x20 lwhisk idA . z = z\n  rwhisk z . idA = z\n}\n\
                   pseudocat {\n  C0 = A\n  C1 = A\n  d = idA\n  c = idA\n  e = idA\n\
                   \x20 m = idA\n  C2 = (A, idA, idA)\n  C3 = (A, idA, idA)\n\
                   \x20 alpha = z\n  lambda = z\n  rho = z\n}\n";
    out.push(("pseudo_trivial.sesq", serialize(&parse(trivial).unwrap())));

    out
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn model_of(name: &str) -> Model {
    let text = fs::read_to_string(golden_dir().join(name)).unwrap();
    let doc = parse(&text).unwrap_or_else(|d| panic!("{name} failed to parse: {d:?}"));
    elaborate(&doc).unwrap_or_else(|d| panic!("{name} failed to elaborate: {d:?}"))
}

/// Rewrites the corpus on disk.  Run explicitly after changing an emitter
/// or the canonical form: `cargo test -p sesq-dsl -- --ignored regenerate`.
#[test]
#[ignore = "rewrites tests/golden; run on purpose, then review the diff"]
fn regenerate() {
    fs::create_dir_all(golden_dir()).unwrap();
    for (name, text) in corpus() {
        fs::write(golden_dir().join(name), text).unwrap();
    }
}

#[test]
fn golden_files_match_the_emitters() {
    for (name, text) in corpus() {
        let on_disk = fs::read_to_string(golden_dir().join(name))
            .unwrap_or_else(|e| panic!("{name}: {e} (regenerate the corpus?)"));
        assert_eq!(on_disk, text, "{name} no longer matches its emitter");
    }
}

#[test]
fn golden_files_round_trip_byte_for_byte() {
    for (name, _) in corpus() {
        let text = fs::read_to_string(golden_dir().join(name)).unwrap();
        let doc = parse(&text).unwrap_or_else(|d| panic!("{name} failed to parse: {d:?}"));
        let once = serialize(&doc);
        assert_eq!(once, text, "{name} is not in canonical form");
        let twice = serialize(&parse(&once).unwrap());
        assert_eq!(twice, once, "serialization of {name} is not idempotent");
    }
}

#[test]
fn group_fixture_files_elaborate_to_valid_tables() {
    let h = model_of("f1.sesq").structure.expect("f1 defines cells");
    assert_eq!(h.all_cells().unwrap().len(), 2);
    assert!(validate_structure(&h).unwrap().ok());

    let h = model_of("f2.sesq").structure.expect("f2 defines cells");
    assert_eq!(h.all_cells().unwrap().len(), 6);
    assert!(validate_structure(&h).unwrap().ok());
}

#[test]
fn derive_files_build_valid_structures() {
    let h = model_of("diamond.sesq").structure.expect("discrete cells");
    assert_eq!(h.all_cells().unwrap().len(), 9);
    assert!(validate_structure(&h).unwrap().ok());

    let h = model_of("conj_z3.sesq").structure.expect("conjugation cells");
    assert_eq!(h.all_cells().unwrap().len(), 9);
    assert!(validate_structure(&h).unwrap().ok());

    for name in ["deriv_z2.sesq", "f3.sesq"] {
        let h = model_of(name)
            .structure
            .unwrap_or_else(|| panic!("{name} defines cells"));
        assert!(validate_structure(&h).unwrap().ok(), "{name}");
    }

    // Internal transformations stay lazy, so membership is the check.
    let m = model_of("intcat.sesq");
    let h = m.structure.expect("intcat.sesq defines cells");
    assert!(h.is_lazy());
    let cat = m.cat.expect("intcat.sesq defines a category");
    let o = cat.objects()[0];
    let cells = constructions::all_internal_cells(&h, o, o).unwrap();
    assert!(!cells.is_empty());
    for c in &cells {
        assert!(h.lazy().unwrap().contains(&cat, c).unwrap());
    }
}

#[test]
fn pseudocategory_files_pass_the_coherence_checks() {
    for name in ["grp_z3.sesq", "additive.sesq", "pseudo_trivial.sesq"] {
        let m = model_of(name);
        let h = m.structure.unwrap_or_else(|| panic!("{name} defines cells"));
        let data = m.pseudo.unwrap_or_else(|| panic!("{name} carries pseudocat data"));
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &[]).unwrap();
            assert!(report.ok(), "{name} ({mode:?}):\n{report}");
        }
    }
}
