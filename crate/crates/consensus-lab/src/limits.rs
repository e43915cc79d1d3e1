/// Size guards for the exact algorithms.
///
/// Everything in this crate is exponential by design; the guards keep
/// invocations at desk scale and turn runaway requests into clean
/// `Error::SizeLimit` values instead of multi-hour searches. They are
/// configuration, not algorithmic constants: callers may raise them, and the
/// CLI honors `CONSENSUS_LAB_MAX_CANDIDATES`.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Candidate/vertex bound for subset-DP scoring and recognition
    /// (memory: one u64 per subset). Hard engine cap is 24.
    pub max_score_candidates: usize,
    /// Candidate bound for enumerating a full consensus set.
    pub max_enumeration_candidates: usize,
    /// Candidate bound for the factorial brute-force oracle.
    pub max_oracle_candidates: usize,
    /// Cap on how many optimal rankings an enumeration may return.
    pub max_consensus_count: usize,
    /// Universe bound for subset searches (vertex covers, feedback arc
    /// sets, deletion sets).
    pub max_subset_universe: usize,
    /// Vertex bound for node-deletion solvability checks. Higher than the
    /// subset bound because those searches only enumerate small deletion
    /// sets and rely on branch-and-bound clique checks, not full subset
    /// sweeps.
    pub max_gnd_vertices: usize,
    /// Candidate bound for manipulation vote searches.
    pub max_manipulation_candidates: usize,
    /// Bound on the size of a manipulating coalition.
    pub max_manipulators: u64,
    /// Cap on candidate weights.
    pub max_weight: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_score_candidates: 20,
            max_enumeration_candidates: 10,
            max_oracle_candidates: 8,
            max_consensus_count: 1_000_000,
            max_subset_universe: 20,
            max_gnd_vertices: 40,
            max_manipulation_candidates: 7,
            max_manipulators: 3,
            max_weight: 10_000,
        }
    }
}

impl Limits {
    /// Defaults with every candidate-count bound set to `n`.
    /// The oracle bound is left alone: it exists to keep the *cross-check*
    /// honest, not to scale with the instance.
    pub fn with_max_candidates(n: usize) -> Self {
        Limits {
            max_score_candidates: n,
            max_enumeration_candidates: n,
            max_subset_universe: n.max(Limits::default().max_subset_universe),
            ..Limits::default()
        }
    }

    /// Defaults, overridden by `CONSENSUS_LAB_MAX_CANDIDATES` when set.
    /// A malformed value is a configuration error, not a silent default.
    pub fn from_env() -> crate::Result<Self> {
        match std::env::var("CONSENSUS_LAB_MAX_CANDIDATES") {
            Ok(raw) => {
                let n: usize = raw.trim().parse().map_err(|_| {
                    crate::Error::invalid(
                        "CONSENSUS_LAB_MAX_CANDIDATES",
                        format!("`{raw}` is not a positive integer"),
                    )
                })?;
                if n == 0 {
                    return Err(crate::Error::invalid(
                        "CONSENSUS_LAB_MAX_CANDIDATES",
                        "must be at least 1",
                    ));
                }
                Ok(Limits::with_max_candidates(n))
            }
            Err(_) => Ok(Limits::default()),
        }
    }
}
