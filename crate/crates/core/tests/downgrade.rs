use tvar_core::descent::{split_cocycle, SignCharacter};
use tvar_core::downgrade::{
    check_real_compatibility, cosection_shift, downgrade, downgrade_with,
    induced_quotient_involution, DowngradeOptions, TorusEmbedding,
};
use tvar_core::num::{ints, rats};
use tvar_core::{Cone, IntMatrix, LatticeInvolution, TailedPolyhedron};

fn weil_restriction_times_line() -> TorusEmbedding {
    TorusEmbedding::new(
        IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]),
        Cone::orthant(3),
        LatticeInvolution::swap(),
        LatticeInvolution::swap().direct_sum(&LatticeInvolution::identity(1)),
    )
}

fn diagonal_on_plane() -> TorusEmbedding {
    TorusEmbedding::new(
        IntMatrix::from_rows(&[[1], [1]]),
        Cone::orthant(2),
        LatticeInvolution::identity(1),
        LatticeInvolution::swap(),
    )
}

fn diagonal_on_space() -> TorusEmbedding {
    TorusEmbedding::new(
        IntMatrix::from_rows(&[[1], [1], [1]]),
        Cone::orthant(3),
        LatticeInvolution::identity(1),
        LatticeInvolution::swap().direct_sum(&LatticeInvolution::identity(1)),
    )
}

fn weil_restriction_on_four_space() -> TorusEmbedding {
    TorusEmbedding::new(
        IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 2], [2, 1]]),
        Cone::orthant(4),
        LatticeInvolution::swap(),
        LatticeInvolution::swap().direct_sum(&LatticeInvolution::swap()),
    )
}

#[test]
fn weil_restriction_times_line_downgrade() {
    let e = weil_restriction_times_line();
    let a = downgrade_with(
        &e,
        &DowngradeOptions {
            projection: Some(IntMatrix::from_rows(&[[-1, -1, 1]])),
            cosection: None,
        },
    )
    .unwrap();
    assert_eq!(a.base().rays(), &[ints(&[-1]), ints(&[1])]);
    assert_eq!(a.tau_hat_y().matrix(), &IntMatrix::from_rows(&[[1]]));
    assert!(a.h_exponent().is_zero());
    assert!(a.ambient().unwrap().equivariant_cosection);
    let d = a.divisor();
    let expected = TailedPolyhedron::new(&[rats(&[1, 0]), rats(&[0, 1])], &Cone::orthant(2)).unwrap();
    assert_eq!(d.coefficient_at(&ints(&[-1])).unwrap(), expected);
    assert!(d.coefficient_at(&ints(&[1])).unwrap().is_tail());
    assert!(check_real_compatibility(&a).unwrap().passes());

    // The canonical projection differs by the sign of the quotient lattice.
    let c = downgrade(&e).unwrap();
    assert_eq!(c.divisor().coefficient_at(&ints(&[1])).unwrap(), expected);
}

#[test]
fn diagonal_line_on_plane() {
    let e = diagonal_on_plane();
    let a = downgrade_with(
        &e,
        &DowngradeOptions {
            projection: None,
            cosection: Some(IntMatrix::from_rows(&[[0, 1]])),
        },
    )
    .unwrap();
    assert_eq!(a.ambient().unwrap().projection, IntMatrix::from_rows(&[[1, -1]]));
    assert_eq!(a.tau_hat_y().matrix(), &IntMatrix::from_rows(&[[-1]]));
    assert_eq!(a.h_exponent(), &IntMatrix::from_rows(&[[1]]));
    let half_line = TailedPolyhedron::new(&[rats(&[1])], &Cone::orthant(1)).unwrap();
    assert_eq!(a.divisor().coefficient_at(&ints(&[-1])).unwrap(), half_line);
    assert!(a.divisor().coefficient_at(&ints(&[1])).unwrap().is_tail());
    assert!(!a.ambient().unwrap().equivariant_cosection);

    let report = check_real_compatibility(&a).unwrap();
    assert!(report.passes(), "{report:?}");
    let forced = a.with_h(IntMatrix::zeros(1, 1), SignCharacter::trivial(1)).unwrap();
    let report = check_real_compatibility(&forced).unwrap();
    assert_eq!(report.failure.unwrap().m, ints(&[1]));

    let o = split_cocycle(&a.cocycle().unwrap());
    assert!(o.obstruction().unwrap().exponent.is_some());
}

#[test]
fn diagonal_line_in_space_has_equivariant_cosection() {
    let a = downgrade(&diagonal_on_space()).unwrap();
    let amb = a.ambient().unwrap();
    assert!(amb.equivariant_cosection);
    assert!(a.h_exponent().is_zero());
    assert!(check_real_compatibility(&a).unwrap().passes());
    assert_eq!(a.base().rank(), 2);
    assert_eq!(a.base().rays().len(), 3);
}

#[test]
fn weil_restriction_on_four_space_downgrade() {
    let e = weil_restriction_on_four_space();
    let p = IntMatrix::from_rows(&[[-1, -2, 1, 0], [-2, -1, 0, 1]]);
    let s = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
    let a = downgrade_with(
        &e,
        &DowngradeOptions {
            projection: Some(p),
            cosection: Some(s),
        },
    )
    .unwrap();
    let mut rays = a.base().rays().to_vec();
    rays.sort();
    assert_eq!(rays, vec![ints(&[-2, -1]), ints(&[-1, -2]), ints(&[0, 1]), ints(&[1, 0])]);
    let o = Cone::orthant(2);
    let d3 = TailedPolyhedron::new(&[rats(&[0, 1]), rats(&[2, 0])], &o).unwrap();
    let d4 = TailedPolyhedron::new(&[rats(&[0, 2]), rats(&[1, 0])], &o).unwrap();
    assert_eq!(a.divisor().coefficient_at(&ints(&[-2, -1])).unwrap(), d3);
    assert_eq!(a.divisor().coefficient_at(&ints(&[-1, -2])).unwrap(), d4);
    assert_eq!(a.tau_hat_y(), &LatticeInvolution::swap());
    assert!(a.h_exponent().is_zero());
    assert!(check_real_compatibility(&a).unwrap().passes());
}

#[test]
fn induced_involutions() {
    let e = weil_restriction_times_line();
    let t = induced_quotient_involution(&e, &IntMatrix::from_rows(&[[-1, -1, 1]])).unwrap();
    assert_eq!(t.matrix(), &IntMatrix::from_rows(&[[1]]));
    let t = induced_quotient_involution(&diagonal_on_plane(), &IntMatrix::from_rows(&[[1, -1]])).unwrap();
    assert_eq!(t.matrix(), &IntMatrix::from_rows(&[[-1]]));
    let e = weil_restriction_on_four_space();
    let p = IntMatrix::from_rows(&[[-1, -2, 1, 0], [-2, -1, 0, 1]]);
    assert_eq!(induced_quotient_involution(&e, &p).unwrap(), LatticeInvolution::swap());
}

#[test]
fn full_torus_has_point_base() {
    let a = downgrade(&TorusEmbedding::full_torus(3)).unwrap();
    assert_eq!(a.base().rank(), 0);
    assert!(a.divisor().terms().is_empty());
    assert_eq!(a.weight_cone(), &Cone::orthant(3));
    assert_eq!(a.h_exponent().rows(), 0);
}

#[test]
fn cosection_change_shifts_coefficients() {
    for e in [weil_restriction_times_line(), weil_restriction_on_four_space()] {
        let a1 = downgrade(&e).unwrap();
        let amb = a1.ambient().unwrap();
        let p = amb.projection.clone();
        // A second cosection: add a map that factors through P.
        let k = p.rows();
        let d = e.f.cols();
        let mut s0 = IntMatrix::zeros(d, k);
        s0[(0, 0)] = 1.into();
        let s2 = &amb.cosection + &(&s0 * &p);
        let a2 = downgrade_with(
            &e,
            &DowngradeOptions {
                projection: Some(p.clone()),
                cosection: Some(s2.clone()),
            },
        )
        .unwrap();
        assert_eq!(cosection_shift(&s2, &amb.cosection, &p).unwrap(), s0);
        let shifted = tvar_core::descent::shift_coefficients(a1.divisor(), &s0).unwrap();
        assert_eq!(&shifted, a2.divisor());
    }
}
