//! The commuting-matrix construction against the dual preset coproducts.

use galilei_core::lm::{is_antisymmetric, lm_coproduct, preset_input};
use galilei_core::presets::Preset;
use galilei_core::GeneratorId;

#[test]
fn lm_reproduces_both_dual_coproducts_at_six() {
    for preset in [Preset::DualA, Preset::DualB] {
        let spec = preset.hopf(6);
        let p = spec.presentation();
        let input = preset_input(preset, p).unwrap().unwrap();
        let lm = lm_coproduct(p, input, 6).unwrap();
        let data = spec.expand(Some(6)).unwrap();
        for k in 0..p.rank() {
            let g = GeneratorId(k as u8);
            assert_eq!(
                lm.coproducts[k],
                data.delta_gen(g).truncate_graded(6, p.grades()),
                "{preset} {}",
                p.alphabet().name(g)
            );
        }
        assert!(lm.coassociativity_defects(p).unwrap().iter().all(|d| d.is_zero()));
        assert!(lm.counit_holds());
        assert!(lm.cocommutator().unwrap().iter().all(is_antisymmetric));
    }
}

#[test]
fn groups_have_no_lm_input() {
    for preset in [Preset::GroupA, Preset::GroupB] {
        assert!(preset_input(preset, &preset.presentation(6)).unwrap().is_none());
    }
}

#[test]
fn noncommuting_matrices_are_rejected() {
    let p = Preset::DualA.presentation(6);
    let mut input = preset_input(Preset::DualA, &p).unwrap().unwrap();
    input.nu[0][1][0] = galilei_core::Scalar::one();
    assert!(lm_coproduct(&p, input, 4).is_err());
}
