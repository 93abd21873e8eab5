//! Reference instances used throughout the tests and the CLI examples.

use crate::formula::{parse_dimacs, Cnf2};
use crate::horn::ClauseSet;

/// Nine variables, fifteen clauses, thirty models.
pub const THIRTY_MODELS_DIMACS: &str = "c nine-variable example, 30 models
p cnf 9 15
-7 -6 0
-9 -8 0
-8 -7 0
-8 6 0
-6 3 0
-5 3 0
3 6 0
-2 1 0
-1 6 0
-5 -2 0
-9 -1 0
-9 -2 0
-9 4 0
-9 -7 0
-2 4 0
";

/// Seven variables, ten clauses, four models.
pub const FOUR_MODELS_DIMACS: &str = "c seven-variable example, 4 models
p cnf 7 10
1 -3 0
-1 -4 0
4 3 0
-2 -4 0
-3 5 0
1 5 0
1 6 0
-5 -7 0
-6 -7 0
-2 6 0
";

/// Four clauses over four variables with exactly three Horn renamings.
pub const RENAMABLE_CLAUSES_DIMACS: &str = "c Horn-renamable clause set
p cnf 4 4
1 -2 -4 0
3 4 0
1 -3 -4 0
1 2 0
";

pub fn thirty_models() -> Cnf2 {
    parse_dimacs(THIRTY_MODELS_DIMACS).expect("fixture parses")
}

pub fn four_models() -> Cnf2 {
    parse_dimacs(FOUR_MODELS_DIMACS).expect("fixture parses")
}

pub fn renamable_clauses() -> ClauseSet {
    ClauseSet::parse_dimacs(RENAMABLE_CLAUSES_DIMACS).expect("fixture parses")
}
