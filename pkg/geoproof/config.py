"""
Geoproof Configuration
======================
Central configuration for all modules. Budgets and oracle bounds live here;
callers override them per call.
"""

# =============================================================================
# LABELS
# =============================================================================
FRESH_LABEL_PREFIX = "w"        # fresh labels are w0, w1, ... (least unused)
CANONICAL_LABEL_PREFIX = "v"    # alpha-normal forms use v0, v1, ...
CANONICAL_PERMUTATION_CAP = 720 # tie-group permutations tried by labelled canonical forms

# =============================================================================
# PROOF SEARCH (G3I*)
# =============================================================================
G3I_MAX_DEPTH = 40
G3I_MAX_LABELS = 6
G3I_MAX_SEQUENT_SIZE = 60

# =============================================================================
# PROOF SEARCH (LG3ipm*)
# =============================================================================
LG3IPM_MAX_DEPTH = 40
LG3IPM_MAX_LABELS = 6
LG3IPM_MAX_SEQUENT_SIZE = 80
LG3IPM_ALLOW_FRESH = False      # fresh labels (R⊃ι, fresh structural instances) only on request
LG3IPM_MAX_NODES = 20000        # search nodes before a run counts as exhausted

# Budget for constructors that fall back to search on unhandled cases
FALLBACK_MAX_DEPTH = 30
FALLBACK_MAX_LABELS = 7
FALLBACK_MAX_SEQUENT_SIZE = 120
FALLBACK_MAX_NODES = 3000         # search nodes per fallback run
ELIMINATION_MAX_STEPS = 5000     # rewritten nodes per elimination before it searches

# =============================================================================
# KRIPKE ORACLE
# =============================================================================
MAX_WORLDS_CAP = 5              # enumerate_models refuses larger bounds
ORACLE_WORLDS = 3               # semantic cross-checks in verify_translation
COUNTERMODEL_WORLDS = 4         # default bound for the countermodel command

# =============================================================================
# TRANSLATION
# =============================================================================
BRIDGE_SPLIT_DEPTH = 4          # nested lin splits when bridging premisses
MERGE_SEARCH_CAP = 4096         # label maps tried when merging components

# =============================================================================
# CLI
# =============================================================================
EXIT_OK = 0
EXIT_NEGATIVE = 1               # refuted, countermodel found, check failed
EXIT_BUDGET_OR_USAGE = 2        # budget exhausted or malformed input
DEFAULT_FORMAT = "text"
