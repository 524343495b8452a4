/// Degree 5 table in a reference basis of (Z/2)^6 + Z/4: value, then the words with that value.
pub const DEGREE5_VALUES: &[(&str, &str)] = &[
    ("0,0,0,0,0,0,1", "ABACDCBD ABCBDACD ABCDCADB"),
    ("0,0,0,0,0,0,2", "ABACDECBDE ABACDECBED ABACDECDBE ABACDEDCBE ABCABDEDCE ABCACDEBDE ABCACDEBED ABCADEBDEC ABCADEBEDC ABCADEDBCE ABCADEDCBE ABCBADEDCE ABCBDEACDE ABCBDEACED ABCBDEADCE ABCBDEDACE ABCDABDECE ABCDABECED ABCDACDEBE ABCDACEBED ABCDADCEBE ABCDADEBCE ABCDADEBEC ABCDADECBE ABCDAEBCED ABCDAEBECD ABCDAEBEDC ABCDAECBED ABCDAECEBD ABCDBADECE ABCDBAECED ABCDBCEADE ABCDBEACDE ABCDBEADCE ABCDBECEAD ABCDCBEADE ABCDCEABDE ABCDCEADBE ABCDCEADEB ABCDCEBADE ABCDEBCEAD ABCDEBDEAC ABCDEBEACD ABCDEBEADC ABCDEBEDAC ABCDECADEB ABCDECAEDB ABCDECBEAD ABCDECDAEB ABCDECEABD ABCDECEBAD ABCDEDABEC ABCDEDAEBC ABCDEDAECB ABCDEDBAEC ABCDEDCAEB"),
    ("0,0,0,0,0,1,2", "ABCDEDBEAC"),
    ("0,0,0,0,1,0,2", "ABCDECEADB"),
    ("0,0,0,1,0,0,0", "ABCACDBEDE ABCBDEAECD ABCDCEAEDB ABCDEDACEB"),
    ("0,0,0,1,0,1,2", "ABCADCDEBE"),
    ("0,0,0,1,1,0,0", "ABCADECDBE ABCADEDBEC ABCDBECADE"),
    ("0,0,0,1,1,0,2", "ABCADBEDEC ABCDCEDAEB"),
    ("0,0,0,1,1,1,0", "ABACDBDECE ABACDBECED ABACDCEBED ABACDEDBCE ABCBDEDCAE ABCDCAEDEB ABCDCEBDAE"),
    ("0,0,1,0,0,0,0", "ABCACDEDBE ABCADBECDE ABCDBEACED ABCDECAEBD"),
    ("0,0,1,0,1,1,0", "ABCBDAECED"),
    ("0,0,1,1,0,0,0", "ABACDCBEDE ABCBDACEDE ABCBDADECE ABCBDECEAD ABCDADBECE ABCDADECEB ABCDAECEDB"),
    ("0,0,1,1,0,1,2", "ABACDCEDBE"),
    ("0,0,1,1,1,0,0", "ABCDACEDBE ABCDAEBDEC ABCDBDEACE"),
    ("0,0,1,1,1,0,2", "ABCBDCEADE ABCDBEDEAC"),
    ("0,0,1,1,1,1,0", "ABACBDEDCE ABCDCAEBED ABCDCEBEAD ABCDEBECAD"),
    ("0,1,0,0,0,0,0", "ABCDBECAED ABCDEACEBD ABCDEADBEC"),
    ("0,1,0,0,0,0,2", "ABCBDEDAEC"),
    ("0,1,0,0,1,0,0", "ABCADEDCEB"),
    ("0,1,0,1,0,1,2", "ABACDCEBDE ABACDEDBEC ABCADBDECE ABCDBDAECE"),
    ("0,1,0,1,1,0,0", "ABACDBCEDE ABACDBEDEC ABCBDCAEDE"),
    ("0,1,1,0,0,0,0", "ABCDBEADEC ABCDEBDACE ABCDECADBE"),
    ("0,1,1,0,0,0,2", "ABCDBDEAEC"),
    ("0,1,1,0,0,1,0", "ABCDBDECAE"),
    ("0,1,1,1,0,0,2", "ABCBDCEAED ABCDCADEBE"),
    ("0,1,1,1,1,0,0", "ABACBDCEDE ABCADCEDEB ABCADEBDCE ABCBDCEDAE ABCDACEBDE ABCDAEDBEC ABCDBEDACE ABCDBEDAEC ABCDEBDAEC ABACBDCD"),
    ("0,1,1,1,1,0,3", "ABCACDBD ABCADBDC ABCDBDAC"),
    ("0,1,1,1,1,1,2", "ABACDECEBD ABCBDAEDEC"),
    ("1,0,0,0,0,0,0", "ABCADBECED ABCADECEBD ABCBDAECDE ABCBDEDCEA ABCDBDECEA ABCDBECEDA ABCDCAEDBE ABCDCEBDEA ABCDECEBDA ABCDEDBECA"),
    ("1,0,0,0,1,1,2", "ABCADCEBED ABCADEBECD ABCBDAEDCE ABCDCAEBDE"),
];

/// Rank 5 homotopy classes separated by the degree 6 invariant, apart from the trivial class and
/// the two classes in [`RANK5_UNRESOLVED`]. Classes that contain a word of rank 4 or less list only those words.
pub const RANK5_CLASSES: &[&str] = &[
    "ABCBDAEDCE ABCDCAEBDE",
    "ABCACDBEDE",
    "ABACDCEDBE",
    "ABACDCEBED ABCDCAEDEB ABCBDEDCAE ABACDEDBCE ABCDCEBDAE",
    "ABCBDCEAED",
    "ABCDECEADB",
    "ABCDCEDAEB ABCDEBDACE",
    "ABCDEBECAD ABCDCEBEAD ABCDCAEBED",
    "ABCADBDECE ABCDBDAECE",
    "ABACDCEBDE ABACDEDBEC",
    "ABCADCDEBE",
    "ABACBDCEDE",
    "ABACDBECED ABACDBDECE",
    "ABCDBEDEAC ABCDEADBEC",
    "ABCBDCEDEA",
    "ABACDBCEDE ABCBDCAEDE ABACDBEDEC",
    "ABCADCEBED ABCADEBECD",
    "ABCADEDCEB",
    "ABCBDCEADE ABCBDEDAEC ABCDACEDBE ABCDAEBDEC",
    "ABCDEDBECA ABCBDAECDE ABCBDEDCEA ABCDCAEDBE ABCDCEBDEA",
    "ABCDBECAED ABCDBDEACE ABCDEACEBD",
    "ABCDBEADEC ABCDECADBE ABCADEDBEC",
    "ABCDCADEBE",
    "ABCADECDBE ABCADBEDEC ABCDBECADE ABCDBDEAEC",
    "ABCADECEBD ABCDBECEDA ABCDECEBDA ABCDBDECEA ABCADBECED",
    "ABACDECEBD",
    "ABCDBDECAE",
    "ABCBDEAECD ABCDEDACEB ABCDCEAEDB",
    "ABACBDEDCE",
    "ABCDADECEB ABCDAECEDB ABCBDADECE ABCDADBECE ABCBDECEAD",
    "ABCBDAECED",
    "ABCBDAEDEC",
    "ABCDEDBEAC",
    "ABACDCBEDE ABCBDACEDE",
    "ABACDCBD ABCBDACD ABCDCADB",
    "ABCACDBD ABCADBDC ABCDBDAC",
    "ABACBDCD",
];

/// Two move-connected sets with equal degree 6 value that no search has joined.
pub const RANK5_UNRESOLVED: (&str, &str) = ("ABCDBEACED ABCDECAEBD", "ABCADBECDE ABCACDEDBE");

pub const DEGREE4_WORDS: &[&str] = &["ABACDCBD", "ABCACDBD", "ABCADBDC", "ABCBDACD", "ABCDBDAC", "ABCDCADB"];

pub const RANK4_CLASSES: &[&str] = &["ABACDCBD ABCBDACD ABCDCADB", "ABCACDBD ABCADBDC ABCDBDAC", "ABACBDCD"];
