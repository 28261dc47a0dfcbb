//! The five built-in demonstration systems, one per realized bound case.

use crate::centers::{AffineMap, CenterSpec, Family, LinearParams, TimeSign};
use crate::closing::PiecewiseSystem;
use crate::rat::{rat, ratio, Rat};

/// Identifier of a built-in case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinCase {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Prop5,
}

impl BuiltinCase {
    pub const ALL: [BuiltinCase; 5] = [
        BuiltinCase::Prop1,
        BuiltinCase::Prop2,
        BuiltinCase::Prop3,
        BuiltinCase::Prop4,
        BuiltinCase::Prop5,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            BuiltinCase::Prop1 => "prop1",
            BuiltinCase::Prop2 => "prop2",
            BuiltinCase::Prop3 => "prop3",
            BuiltinCase::Prop4 => "prop4",
            BuiltinCase::Prop5 => "prop5",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }
}

fn lc(a: Rat, b: Rat, c: Rat, d: Rat, omega: Rat) -> Family {
    Family::Lc(LinearParams { a, b, c, d, omega })
}

/// The exact piecewise system of the given built-in case.
pub fn builtin_system(case: BuiltinCase) -> PiecewiseSystem {
    let (right, left) = match case {
        BuiltinCase::Prop1 => (
            CenterSpec::base(lc(rat(0), rat(2), rat(0), rat(1), rat(1))).unwrap(),
            CenterSpec::new(
                Family::S1,
                AffineMap::from_i64([2, 0, 3, 2, -1, 1]),
                TimeSign::Forward,
            )
            .unwrap(),
        ),
        BuiltinCase::Prop2 => (
            CenterSpec::base(lc(rat(-1), rat(1), ratio(4, 5), rat(1), rat(1))).unwrap(),
            CenterSpec::new(
                Family::S2,
                AffineMap::from_i64([-2, -1, -1, -2, -2, 1]),
                TimeSign::Forward,
            )
            .unwrap(),
        ),
        BuiltinCase::Prop3 => (
            CenterSpec::new(
                Family::S1,
                AffineMap::from_i64([0, -1, 1, -2, 0, 1]),
                TimeSign::Forward,
            )
            .unwrap(),
            CenterSpec::new(
                Family::S1,
                AffineMap::from_i64([2, 0, 3, 2, -1, 1]),
                TimeSign::Forward,
            )
            .unwrap(),
        ),
        // The time-reversed S2 center governs x >= 0 here: the translated
        // S1 image's level branch through (0, -1) and (0, 1) only connects
        // the two points through x < 0, so it must be the left half.
        BuiltinCase::Prop4 => (
            CenterSpec::new(Family::S2, AffineMap::identity(), TimeSign::Reversed).unwrap(),
            CenterSpec::new(
                Family::S1,
                AffineMap::from_i64([1, 0, 1, 0, 1, -2]),
                TimeSign::Forward,
            )
            .unwrap(),
        ),
        BuiltinCase::Prop5 => (
            CenterSpec::base(Family::S2).unwrap(),
            CenterSpec::new(
                Family::S2,
                AffineMap::from_i64([1, 0, 1, 1, -1, -1]),
                TimeSign::Forward,
            )
            .unwrap(),
        ),
    };
    PiecewiseSystem { right, left }
}
