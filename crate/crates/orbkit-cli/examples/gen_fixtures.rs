//! Regenerates the shipped fixtures: `cargo run -p orbkit-cli --example gen_fixtures -- fixtures`.

use orbkit::bimodules::Bimodule;
use orbkit::frobenius::{euler_gamma, examples as fx, FrobeniusStructure};
use orbkit::fusioncat::{examples as cx, ModuleCategoryData};
use orbkit::rtdefects::examples as rx;
use orbkit::scalars::Field;
use orbkit::schema::*;
use orbkit::statesum::{fixtures as tx, OrderedTriangulation, StratifiedFile, StratumFile};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::Path;

fn write<T: Serialize>(dir: &Path, name: &str, v: &T) {
    let text = serde_json::to_string_pretty(v).unwrap();
    std::fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
}

fn bimodule_file(x: &Bimodule, left: &str, right: &str) -> BimoduleFile {
    let ent = |mats: &[orbkit::linalg::Matrix]| {
        let mut v = Vec::new();
        for (i, m) in mats.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let s = m.get(r, c);
                    if !s.is_zero() {
                        v.push((i, r, c, s.clone()));
                    }
                }
            }
        }
        v
    };
    BimoduleFile {
        schema_version: SCHEMA_VERSION,
        left: left.into(),
        right: right.into(),
        dim: x.dim(),
        lact: ent(x.left_basis_actions()),
        ract: ent(x.right_basis_actions()),
    }
}

fn tri(t: &OrderedTriangulation) -> Value {
    serde_json::to_value(t.to_file()).unwrap()
}

fn main() {
    let dir = Path::new(&std::env::args().nth(1).unwrap()).to_path_buf();
    std::fs::create_dir_all(&dir).unwrap();
    let q = Field::RATIONALS;
    let mut index: Vec<Value> = Vec::new();
    let mut reg = |name: &str, kind: &str, expect: Option<bool>| {
        let mut e = json!({"name": name, "kind": kind, "file": format!("{name}.json")});
        if let Some(x) = expect {
            e["expect"] = json!(x);
        }
        index.push(e);
    };

    let algebras: Vec<(&str, FrobeniusStructure, bool)> = vec![
        ("ground", fx::ground_with_counit(q.one()), true),
        ("q_lambda3", fx::ground_with_counit(q.int(3)), true),
        ("q_z2", fx::cyclic_group(2, q), true),
        ("q_z2_gamma", euler_gamma(&fx::cyclic_group(2, q)).unwrap(), true),
        ("q_z3", fx::cyclic_group(3, q), true),
        ("mat2", fx::matrices_with_trace(2, q.one()), true),
        ("mat2_gamma", euler_gamma(&fx::matrices_with_trace(2, q.one())).unwrap(), true),
        ("dualnumbers", fx::dual_numbers(q), false),
    ];
    for (name, f, ok) in &algebras {
        write(&dir, name, &AlgebraFile::from_structure(f));
        reg(name, "algebra", Some(*ok));
    }
    let get = |n: &str| algebras.iter().find(|a| a.0 == n).unwrap().1.clone();

    let z2g = get("q_z2_gamma");
    write(&dir, "regular_q_z2", &bimodule_file(&Bimodule::regular(&z2g), "q_z2_gamma", "q_z2_gamma"));
    reg("regular_q_z2", "bimodule", Some(true));
    let lact = (0..2).map(|i| z2g.algebra().left_matrix(&z2g.algebra().basis(i))).collect();
    let gm = Bimodule::left_module(z2g.clone(), get("ground"), lact).unwrap();
    write(&dir, "z2_over_ground", &bimodule_file(&gm, "q_z2_gamma", "ground"));
    reg("z2_over_ground", "bimodule", Some(true));
    let m2 = get("mat2");
    let column: Vec<_> = (0..4)
        .map(|i| {
            let (a, b) = (i / 2, i % 2);
            let mut m = orbkit::linalg::Matrix::zeros(2, 2, q);
            m.set(a, b, q.one());
            m
        })
        .collect();
    let col = Bimodule::left_module(m2, get("ground"), column).unwrap();
    write(&dir, "column_mat2", &bimodule_file(&col, "mat2", "ground"));
    reg("column_mat2", "bimodule", Some(true));

    for (name, datum, ok) in
        [("split_q_z2", "q_z2_gamma", true), ("split_mat2", "mat2_gamma", true), ("split_dualnumbers", "dualnumbers", false)]
    {
        write(&dir, name, &OrbifoldDatumFile { schema_version: SCHEMA_VERSION, datum: datum.into(), base: None, inclusion: vec![] });
        reg(name, "orbifold", Some(ok));
    }

    for (name, data) in
        [("vec_z2", cx::vec_cyclic(2)), ("vec_z3", cx::vec_cyclic(3)), ("vec_z2_twisted", cx::vec_z2_twisted()), ("fib", cx::fibonacci())]
    {
        write(&dir, name, &FusionFile::from_data(&data));
        reg(name, "fusion", Some(true));
    }
    for (name, data) in [
        ("vec", rx::vector_spaces()),
        ("z2_symmetric", rx::z2_symmetric()),
        ("svec", rx::super_vector_spaces()),
        ("toric", rx::toric_code()),
    ] {
        write(&dir, name, &BraidedFile::from_data(&data));
        reg(name, "braided", Some(true));
    }

    write(&dir, "cy_squares", &CyFile { schema_version: SCHEMA_VERSION, field: 1, simples: 3, traces: vec![q.one(), q.int(4), q.int(9)] });
    reg("cy_squares", "cy", Some(true));
    write(&dir, "cy_two", &CyFile { schema_version: SCHEMA_VERSION, field: 1, simples: 1, traces: vec![q.int(2)] });
    reg("cy_two", "cy", Some(false));
    write(
        &dir,
        "cy_scaled",
        &CyFile { schema_version: SCHEMA_VERSION, field: 1, simples: 3, traces: vec![q.int(2), q.ratio(1, 3), q.int(5)] },
    );
    reg("cy_scaled", "cy", Some(false));

    let z2 = cx::vec_cyclic(2);
    let dirichlet = ModuleCategoryData::new(
        z2.clone(),
        1,
        [(0, 0, 0), (1, 0, 0)],
        [[0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [1, 0, 0, 0, 1, 0], [1, 1, 0, 0, 0, 0]].map(|k| (k, q.one())),
        vec![q.one()],
    )
    .unwrap();
    write(&dir, "z2_dirichlet", &ModuleFile::from_data(&dirichlet, "vec_z2"));
    reg("z2_dirichlet", "module", Some(true));
    write(&dir, "fib_regular", &ModuleFile::from_data(&ModuleCategoryData::regular(&cx::fibonacci()), "fib"));
    reg("fib_regular", "module", Some(true));

    for (name, t) in [
        ("sphere_tetrahedron", tx::sphere_tetrahedron()),
        ("sphere_bipyramid", tx::sphere_bipyramid()),
        ("torus_three_vertex", tx::torus_three_vertex()),
        ("torus_four_vertex", tx::torus_four_vertex()),
        ("torus_seven_vertex", tx::torus_seven_vertex()),
        ("genus_two", tx::genus_two()),
        ("circle3", tx::circle(3)),
        ("s3_two_tet", tx::s3_two_tet()),
        ("s3_pentachoron", tx::s3_pentachoron()),
        ("s2_times_s1", tx::s2_times_s1()),
        ("three_torus", tx::three_torus()),
    ] {
        write(&dir, name, &tri(&t));
        reg(name, "triangulation", None);
    }

    // 2d: regular line along a non-separating loop of the 7-vertex torus.
    let torus = tx::torus_seven_vertex();
    let meridian: Vec<Vec<usize>> =
        (0..7).flat_map(|i| [[i, (i + 2) % 7], [i, (i + 3) % 7]]).map(|[a, b]| vec![a.min(b), a.max(b)]).collect();
    let strat = StratifiedFile {
        triangulation: torus.to_file(),
        strata: vec![
            StratumFile { dim: 2, support: (0..7).map(|v| vec![v]).collect(), label: "q_z2_gamma".into(), orient: 1 },
            StratumFile { dim: 1, support: meridian, label: "regular_q_z2".into(), orient: 1 },
        ],
    };
    write(&dir, "torus_regular_line", &strat);
    reg("torus_regular_line", "stratified", None);
    let sphere = tx::sphere_tetrahedron();
    let strat = StratifiedFile {
        triangulation: sphere.to_file(),
        strata: vec![
            StratumFile { dim: 2, support: vec![vec![0]], label: "q_z2_gamma".into(), orient: 1 },
            StratumFile { dim: 2, support: vec![vec![1], vec![2], vec![3]], label: "ground".into(), orient: 1 },
            StratumFile { dim: 1, support: vec![vec![0, 1], vec![0, 2], vec![0, 3]], label: "z2_over_ground".into(), orient: 1 },
        ],
    };
    write(&dir, "sphere_module_circle", &strat);
    reg("sphere_module_circle", "stratified", None);
    let s3 = tx::s3_pentachoron();
    let crossed: Vec<Vec<usize>> = s3.edges().into_iter().filter(|e| e[0] < 2 && e[1] >= 2).map(|e| e.to_vec()).collect();
    let strat = StratifiedFile {
        triangulation: s3.to_file(),
        strata: vec![
            StratumFile { dim: 3, support: vec![vec![0], vec![1]], label: "fib".into(), orient: 1 },
            StratumFile { dim: 3, support: (2..5).map(|v| vec![v]).collect(), label: "fib".into(), orient: 1 },
            StratumFile { dim: 2, support: crossed, label: "fib".into(), orient: 1 },
        ],
    };
    write(&dir, "s3_fib_regular_surface", &strat);
    reg("s3_fib_regular_surface", "stratified", None);

    let vec = rx::vector_spaces();
    let z2s = rx::z2_symmetric();
    let svec = rx::super_vector_spaces();
    let toric = rx::toric_code();
    let comm: Vec<(&str, &str, &orbkit::rtdefects::BraidedFusionData, orbkit::rtdefects::AlgebraObject, bool)> = vec![
        ("cf_vec_group_z2", "vec", &vec, rx::vec_group_algebra_z2(&vec), true),
        ("cf_vec_diagonal3", "vec", &vec, rx::vec_diagonal(&vec, 3), true),
        ("cf_vec_matrices2", "vec", &vec, rx::vec_matrices(&vec, 2), false),
        ("cf_z2_group", "z2_symmetric", &z2s, rx::group_algebra(&z2s, &[0, 1], |_, _| 1), true),
        ("cf_svec_clifford", "svec", &svec, rx::group_algebra(&svec, &[0, 1], |_, _| 1), false),
        ("cf_toric_e", "toric", &toric, rx::group_algebra(&toric, &[0, 1], |_, _| 1), true),
        ("cf_toric_m", "toric", &toric, rx::group_algebra(&toric, &[0, 2], |_, _| 1), true),
        ("cf_toric_f", "toric", &toric, rx::group_algebra(&toric, &[0, 3], |_, _| 1), false),
    ];
    for (name, cat_name, cat, alg, ok) in comm {
        write(
            &dir,
            name,
            &CommutativeFrobeniusFile {
                schema_version: SCHEMA_VERSION,
                category: cat_name.into(),
                algebra: AlgebraObjectFile::from_object(cat, &alg),
            },
        );
        reg(name, "comm_frob", Some(ok));
    }
    let cat_name = |c: &orbkit::rtdefects::BraidedFusionData| {
        [("vec", &vec), ("z2_symmetric", &z2s), ("svec", &svec), ("toric", &toric)].into_iter().find(|(_, x)| *x == c).unwrap().0
    };
    let file_name = |n: &str| format!("pair_{}", n.replace('-', "_"));
    for f in rx::pair_fixtures() {
        let name = file_name(f.name);
        write(&dir, &name, &PairFile::from_pair(&f.category, cat_name(&f.category), &f.pair));
        reg(&name, "pair", Some(f.expected));
    }
    let pair_of = [
        ("z2-regular", "pair_z2_regular"),
        ("toric-product-regular", "pair_toric_e_m_plain_product"),
        ("toric-m-line", "pair_toric_e_over_ground_and_e"),
    ];
    for f in rx::bimodule_fixtures() {
        let pair = pair_of.iter().find(|p| p.0 == f.name).unwrap().1;
        let name = format!("pb_{}", f.name.replace('-', "_"));
        write(&dir, &name, &PairBimoduleFile::from_bimodule(&f.category, cat_name(&f.category), (pair, pair), &f.module, None));
        reg(&name, "pair_bimodule", Some(f.expected));
    }
    let (line, _) = rx::toric_m_line(&toric);
    let under = orbkit::rtdefects::ExchangeCrossings { right: orbkit::rtdefects::Crossing::Under, ..Default::default() };
    let pair = "pair_toric_e_over_ground_and_e";
    write(&dir, "pb_toric_m_line_under", &PairBimoduleFile::from_bimodule(&toric, "toric", (pair, pair), &line, Some(under)));
    reg("pb_toric_m_line_under", "pair_bimodule", Some(false));

    let golden = |args: &[&str], value: &str| json!({"args": args, "value": value});
    let goldens = vec![
        golden(&["tv", "s3_two_tet", "fib"], "(5-√5)/10"),
        golden(&["tv", "s3_two_tet", "vec_z2"], "1/2"),
        golden(&["tv", "s2_times_s1", "vec_z2"], "1"),
        golden(&["tv", "three_torus", "vec_z2"], "4"),
        golden(&["fhk", "genus_two", "q_lambda3"], "9"),
        golden(&["fhk", "sphere_tetrahedron", "q_lambda3"], "1/9"),
        golden(&["state-space", "torus_three_vertex", "vec_z2"], "4"),
        golden(&["state-space", "circle3", "q_z2_gamma"], "2"),
    ];
    let _ = std::fs::remove_file(dir.join("index.partial.json"));
    write(&dir, "index", &json!({"schema_version": SCHEMA_VERSION, "fixtures": index, "goldens": goldens}));
}
