use std::fmt;
use std::sync::Arc;

/// Maximum number of variables a packed monomial can carry.
pub const MAX_VARS: usize = 8;

/// Ordered, named variable set shared by all polynomials of one ring.
#[derive(Clone)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(
            names.len() <= MAX_VARS,
            "at most {MAX_VARS} variables are supported, got {}",
            names.len()
        );
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name {n:?}"
            );
        }
        VarSet(names.into())
    }

    /// The default ring Z[a^±1, b^±1, c^±1, J].
    pub fn abcj() -> Self {
        VarSet::new(["a", "b", "c", "J"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
