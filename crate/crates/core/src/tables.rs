// SPDX-License-Identifier: Apache-2.0

//! Polynomial tables for the automorphism loci, as (integer coefficient, exponents).

pub(crate) const D4_A: &[(&str, [u8; 3])] = &[
    ("-9", [7, 0, 0]),
    ("-2", [6, 1, 0]),
    ("27", [6, 0, 0]),
    ("-331776", [5, 0, 1]),
    ("18", [4, 2, 0]),
    ("55240704", [4, 0, 1]),
    ("4", [3, 3, 0]),
    ("-54", [3, 2, 0]),
    ("47278080", [3, 1, 1]),
    ("-161243136", [3, 0, 1]),
    ("8294400", [2, 2, 1]),
    ("-107495424", [2, 1, 1]),
    ("9459597312000", [2, 0, 2]),
    ("-9", [1, 4, 0]),
    ("52254720", [1, 2, 1]),
    ("2866544640000", [1, 1, 2]),
    ("-111451255603200", [1, 0, 2]),
    ("-2", [0, 5, 0]),
    ("27", [0, 4, 0]),
    ("12441600", [0, 3, 1]),
    ("-161243136", [0, 2, 1]),
    ("-20639121408000", [0, 1, 2]),
    ("264180754022400000", [0, 0, 3]),
    ("240734712102912", [0, 0, 2]),
];
pub(crate) const D4_B: &[(&str, [u8; 3])] =
    &[("80", [3, 0, 0]), ("-243", [2, 0, 0]), ("540", [1, 1, 0]), ("100", [0, 2, 0]), ("-1458", [0, 1, 0])];
pub(crate) const D6_A: &[(&str, [u8; 3])] = &[
    ("5", [3, 0, 0]),
    ("-1188", [2, 0, 0]),
    ("-360", [1, 1, 0]),
    ("3888", [1, 0, 0]),
    ("-25", [0, 2, 0]),
    ("432", [0, 1, 0]),
];
pub(crate) const D6_B: &[(&str, [u8; 3])] = &[
    ("1", [5, 0, 0]),
    ("-27", [4, 0, 0]),
    ("243", [3, 0, 0]),
    ("5184000", [2, 0, 1]),
    ("-729", [2, 0, 0]),
    ("-9331200", [1, 0, 1]),
    ("-149299200000", [0, 0, 2]),
    ("26873856", [0, 0, 1]),
];
pub(crate) const V4_LOCUS: &[(&str, [u8; 3])] = &[
    ("9", [7, 0, 0]),
    ("2", [6, 1, 0]),
    ("-27", [6, 0, 0]),
    ("331776", [5, 0, 1]),
    ("-18", [4, 2, 0]),
    ("-55240704", [4, 0, 1]),
    ("-4", [3, 3, 0]),
    ("54", [3, 2, 0]),
    ("-47278080", [3, 1, 1]),
    ("161243136", [3, 0, 1]),
    ("-8294400", [2, 2, 1]),
    ("107495424", [2, 1, 1]),
    ("-9459597312000", [2, 0, 2]),
    ("9", [1, 4, 0]),
    ("-52254720", [1, 2, 1]),
    ("-2866544640000", [1, 1, 2]),
    ("111451255603200", [1, 0, 2]),
    ("2", [0, 5, 0]),
    ("-27", [0, 4, 0]),
    ("-12441600", [0, 3, 1]),
    ("161243136", [0, 2, 1]),
    ("20639121408000", [0, 1, 2]),
    ("-264180754022400000", [0, 0, 3]),
    ("-240734712102912", [0, 0, 2]),
];
pub(crate) const J2_ZERO_SPECIAL: &[(&str, [u8; 2])] = &[
    ("1", [6, 1]),
    ("-15265260", [5, 1]),
    ("14693280768", [5, 0]),
    ("-27949860", [4, 2]),
    ("93437786558880", [4, 1]),
    ("-223154201664000000", [4, 0]),
    ("-118098", [3, 3]),
    ("-878290475269680", [3, 2]),
    ("-287728673929542000000", [3, 1]),
    ("1355661775108800000000000", [3, 0]),
    ("85811055510240", [2, 3]),
    ("-2469658010168691000000", [2, 2]),
    ("433843541357670112500000000", [2, 1]),
    ("-4117822641892980000000000000000", [2, 0]),
    ("-1139016237660", [1, 4]),
    ("-109818018101695500000", [1, 3]),
    ("-662569101476807962500000000", [1, 2]),
    ("-327077365625983809843750000000000", [1, 1]),
    ("6253943137374963375000000000000000000", [1, 0]),
    ("3486784401", [0, 5]),
    ("-70607384120250000", [0, 4]),
    ("571919811374025000000000", [0, 3]),
    ("-2316275236064801250000000000000", [0, 2]),
    ("4690457353031222531250000000000000000", [0, 1]),
    ("-3799270455955290250312500000000000000000000", [0, 0]),
];
