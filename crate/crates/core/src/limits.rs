/// Size limits for the exhaustive routines.
///
/// Every search in this crate is exponential in some parameter; these caps keep
/// runs at desk scale and turn oversize inputs into errors instead of hangs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Family size for hypothesis enumeration (`3^|F|` splits in the worst case).
    pub max_family: usize,
    /// Vertex pool size for covector enumeration.
    pub max_vertices: usize,
    /// Ambient dimension for covector enumeration.
    pub max_dim: usize,
    /// Ground set size for exhaustive rank-axiom checks.
    pub max_axiom_ground: usize,
    /// Total number of faces a complex may carry into homology.
    pub max_faces: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_family: 10,
            max_vertices: 20,
            max_dim: 5,
            max_axiom_ground: 12,
            max_faces: 1 << 16,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, limit: usize, actual: usize) -> crate::Result<()> {
        if actual > limit {
            Err(crate::Error::CapExceeded {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}
