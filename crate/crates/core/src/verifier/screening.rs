//! Commutation of the screening currents with the algebra, up to total
//! q-differences.

use super::checks::Check;
use super::table::{e, k, th, Builder, RelationDef};
use crate::catalog::FieldId::{self, *};
use crate::qseries::{ExpForm, Nome};
use crate::vop::Rhs;
use crate::Result;

const SC: &[&str] = &["screening"];

fn regular(b: &Builder, x: FieldId, y: FieldId, sign: i64) -> Result<Check> {
    Ok(Check::Regular { a: b.f(x)?, b: b.f(y)?, sign })
}

fn qdiff(b: &Builder, x: FieldId, y: FieldId, sign: i64, n: ExpForm, stilde: FieldId) -> Result<Check> {
    Ok(Check::QDiff { a: b.f(x)?, b: b.f(y)?, sign, n, stilde: b.f(stilde)? })
}

pub static SCREENING: [RelationDef; 9] = [
    RelationDef {
        id: "HS1",
        suites: SC,
        statement: "H±(z) S1(w) = S1(w) H±(z) = O(1)",
        spin: false,
        build: |b| Ok(vec![regular(b, HPlus, SOne, 1)?, regular(b, HMinus, SOne, 1)?]),
    },
    RelationDef {
        id: "ES1",
        suites: SC,
        statement: "E(z) S1(w) = -S1(w) E(z) = (1)d_w [1/(z - w) st1(z)] + O(1)",
        spin: false,
        build: |b| Ok(vec![qdiff(b, E, SOne, -1, e(1), STilde1)?]),
    },
    RelationDef {
        id: "FS1",
        suites: SC,
        statement: "F(z) S1(w) = -S1(w) F(z) = O(1)",
        spin: false,
        build: |b| Ok(vec![regular(b, F, SOne, -1)?]),
    },
    RelationDef {
        id: "S1S1",
        suites: SC,
        statement: "S1(z) S1(w) = -S1(w) S1(z) = O(1)",
        spin: false,
        build: |b| Ok(vec![regular(b, SOne, SOne, -1)?]),
    },
    RelationDef {
        id: "HS2",
        suites: SC,
        statement: "H±(z) S2(w) = S2(w) H±(z) = O(1)",
        spin: false,
        build: |b| Ok(vec![regular(b, HPlus, STwo, 1)?, regular(b, HMinus, STwo, 1)?]),
    },
    RelationDef {
        id: "ES2",
        suites: SC,
        statement: "E(z) S2(w) = S2(w) E(z) = O(1)",
        spin: false,
        build: |b| Ok(vec![regular(b, E, STwo, 1)?]),
    },
    RelationDef {
        id: "FS2",
        suites: SC,
        statement: "F(z) S2(w) = S2(w) F(z) = (k+2)d_w [1/(z - w) st2(z)] + O(1)",
        spin: false,
        build: |b| Ok(vec![qdiff(b, F, STwo, 1, k() + e(2), STilde2)?]),
    },
    RelationDef {
        id: "S2S2",
        suites: SC,
        statement: "S2(z) S2(w) = θ_(k+2)(u-v+1) / θ_(k+2)(u-v-1) S2(w) S2(z)",
        spin: false,
        build: |b| {
            let kp2 = k() + e(2);
            let rhs = Rhs::sign(1).q(e(-2)).y(e(2) * ExpForm::inv_kp2()).theta(th(e(2) * kp2, e(2), e(-2)));
            Ok(vec![Check::Exchange { a: b.f(STwo)?, b: b.f(STwo)?, rhs, nome: Nome::T }])
        },
    },
    RelationDef {
        id: "S2S1",
        suites: SC,
        statement: "S2(z) S1(w) = -S1(w) S2(z) = (1)d_w [1/(z - w) st3(z)] + O(1)",
        spin: false,
        build: |b| Ok(vec![qdiff(b, STwo, SOne, -1, e(1), STilde3)?]),
    },
];
