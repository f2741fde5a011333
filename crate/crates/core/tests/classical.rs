use nilcone::classical::{build_algebra, grade_algebra, transport_iso, transport_matrix, Grading, Kind, LieAlgebra};
use nilcone::gf::make_field;
use nilcone::linalg::Subspace;

fn cases() -> Vec<(Kind, usize, u32)> {
    vec![(Kind::A, 2, 2), (Kind::A, 2, 3), (Kind::A, 3, 2), (Kind::D, 4, 2), (Kind::D, 4, 3)]
}

fn algebra(kind: Kind, n: usize, p: u32) -> LieAlgebra {
    build_algebra(kind, n, &make_field(p, 1).unwrap()).unwrap()
}

/// `ι(g T g⁻¹) = g · ι(T)` for every group element and every basis element.
#[test]
fn transport_is_equivariant() {
    for (kind, n, p) in cases() {
        let alg = algebra(kind, n, p);
        let group = alg.enumerate_group().unwrap();
        for g in &group {
            let g_inv = g.inverse().unwrap();
            for t in alg.basis() {
                let lhs = transport_iso(&alg, &alg.adjoint(g, &g_inv, t)).unwrap();
                let rhs = alg.coadjoint(g, &g_inv, &transport_iso(&alg, t).unwrap());
                assert_eq!(lhs, rhs, "{kind} n={n} p={p}");
            }
        }
    }
}

/// Every coordinate grading with degrees in `-3..=3` that is s-good.
fn coordinate_gradings(alg: &LieAlgebra) -> Vec<Grading> {
    let n = alg.vdim();
    let mut out = Vec::new();
    let total = 7usize.pow(n as u32);
    for mut idx in 0..total {
        let mut deg = Vec::with_capacity(n);
        for _ in 0..n {
            deg.push((idx % 7) as i32 - 3);
            idx /= 7;
        }
        let g = Grading::coordinate(alg.field(), deg);
        if g.is_s_good(alg) {
            out.push(g);
        }
    }
    out
}

/// `g*_j = ι(g_j)` and `dim g_i = dim g_{−i}`, for coordinate gradings and
/// their translates by group elements.
#[test]
fn graded_pieces_match_under_transport() {
    for (kind, n, p) in cases() {
        let alg = algebra(kind, n, p);
        let iota = transport_matrix(&alg).unwrap();
        let group = alg.enumerate_group().unwrap();
        let base = coordinate_gradings(&alg);
        assert!(base.len() > 1, "{kind} n={n} p={p}");
        let mut checked = 0;
        for (k, g0) in base.iter().enumerate() {
            // a handful of translates per grading keeps this quick
            for h in group.iter().skip(k % group.len()).step_by(group.len() / 4 + 1) {
                let g = g0.act(h);
                let ga = grade_algebra(&alg, &g).unwrap();
                for (&i, piece) in &ga.pieces {
                    assert_eq!(piece.dim(), ga.piece_dim(-i));
                    let image = Subspace::span(alg.field(), alg.dim(), &piece.image_under(&iota).basis_vectors());
                    assert_eq!(Some(&image), ga.dual_piece(i), "{kind} n={n} p={p} i={i}");
                }
                checked += 1;
            }
        }
        eprintln!("{kind} n={n} p={p}: {checked} gradings");
    }
}

#[test]
fn symplectic_gradings_are_self_dual() {
    let f = make_field(2, 1).unwrap();
    let alg = build_algebra(Kind::C, 4, &f).unwrap();
    for g in coordinate_gradings(&alg) {
        let ga = grade_algebra(&alg, &g).unwrap();
        for &i in ga.pieces.keys() {
            assert_eq!(ga.piece_dim(i), ga.piece_dim(-i));
        }
    }
}
