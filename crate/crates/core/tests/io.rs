use bitoeplitz::io::{self, OperatorFile, SectionFile};
use bitoeplitz::models::{builtin, builtin_model, BUILTIN_NAMES};
use bitoeplitz::{random, Error};

#[test]
fn operators_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(13);
        let m = random::alpha_consistent_matrix(l, 2, &mut rng).unwrap();
        let path = dir.path().join(format!("{name}-op.json"));
        io::save_operator(&path, &m).unwrap();
        let back = io::load_operator(&path, l).unwrap();
        for (((i, j), a), (_, b)) in m.blocks().zip(back.blocks()) {
            let same = a.matrix().iter().zip(b.matrix().iter()).all(|(x, y)| {
                x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
            });
            assert!(same, "{name} block ({i}, {j})");
        }
    }
}

#[test]
fn sections_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let model = builtin("m2-inner", 2).unwrap();
    let mut rng = random::seeded(17);
    let f = random::cross_section(&model.ladder, -4..=4, &mut rng).unwrap();
    let path = dir.path().join("f.json");
    io::save_section(&path, &f).unwrap();
    let g = io::load_section(&path, &model.ladder).unwrap();
    assert_eq!(SectionFile::from_section(&f), SectionFile::from_section(&g));
    assert_eq!(f, g);
}

#[test]
fn models_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES {
        for spec in [builtin_model(name).unwrap(), builtin_model(name).unwrap().to_explicit().unwrap()] {
            let path = dir.path().join("model.json");
            io::save_model(&path, &spec).unwrap();
            let back: bitoeplitz::models::ModelSpec = io::read_json(&path).unwrap();
            assert_eq!(back, spec);
            let model = io::load_model(path.to_str().unwrap()).unwrap();
            assert_eq!(model.bimodule.dim(), builtin(name, 1).unwrap().bimodule.dim());
        }
    }
}

#[test]
fn missing_blocks_are_zero_and_bad_shapes_are_rejected() {
    let model = builtin("flip", 1).unwrap();
    let l = &model.ladder;
    let empty = OperatorFile {
        radius: 1,
        blocks: vec![],
    };
    let m = empty.to_matrix(l).unwrap();
    assert!(m.blocks().all(|(_, b)| b.matrix().iter().all(|z| z.norm() == 0.0)));

    let mut file = OperatorFile::from_matrix(&m);
    file.blocks[0].rows = 3;
    assert!(matches!(file.to_matrix(l), Err(Error::Parse(_))));

    let bad = SectionFile {
        entries: vec![bitoeplitz::io::SectionEntry {
            k: 1,
            coeffs: vec![[1.0, 0.0]],
        }],
    };
    assert!(matches!(bad.to_section(l), Err(Error::Parse(_))));
}

#[test]
fn builtin_names_resolve_without_files() {
    let m = io::load_model("perm3").unwrap();
    assert_eq!(m.algebra.block_dims(), &[1, 1, 1]);
    assert!(matches!(io::load_model("no-such-model"), Err(Error::UnknownModel(_))));
}
