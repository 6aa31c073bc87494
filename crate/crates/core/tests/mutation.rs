//! A single corrupted character value must be caught, and only on the
//! preset whose group uses that table.

use npoint_center::autgroup::GroupType;
use npoint_center::presets::FAMILY_PRESETS;
use npoint_center::reptheory::{character_table, CharTable};
use npoint_center::verify::verify_preset_with;
use npoint_center::Cyc;

fn corrupted(target: GroupType) -> impl Fn(GroupType) -> CharTable {
    move |t| {
        let mut table = character_table(t);
        if t == target {
            let last = table.rows.len() - 1;
            let entry = &mut table.rows[last][1];
            *entry = &*entry + &Cyc::one(table.conductor);
        }
        table
    }
}

#[test]
fn each_corrupted_table_fails_exactly_one_preset() {
    let targets = [
        GroupType::Cyclic(5),
        GroupType::Dihedral(5),
        GroupType::Dihedral(4),
        GroupType::S4,
        GroupType::A4,
        GroupType::A5,
    ];
    for (i, target) in targets.into_iter().enumerate() {
        let tables = corrupted(target);
        for (j, preset) in FAMILY_PRESETS.into_iter().enumerate() {
            let failures = verify_preset_with(preset, &tables).into_iter().filter(|a| !a.passed).count();
            if i == j {
                assert!(failures > 0, "{target} corruption not detected on {preset}");
            } else {
                assert_eq!(failures, 0, "{target} corruption leaked into {preset}");
            }
        }
    }
}
