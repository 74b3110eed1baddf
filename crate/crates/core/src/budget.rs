/// Search-node budget shared by the exhaustive searches.
///
/// Budgets count node expansions, never wall time, so every verdict is
/// reproducible.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

/// Marker returned when a search runs out of nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.spent >= self.limit {
            return Err(Exhausted);
        }
        self.spent += 1;
        Ok(())
    }

    /// Records `nodes` expansions made by a nested search.
    pub fn charge(&mut self, nodes: u64) -> Result<(), Exhausted> {
        let over = nodes > self.remaining();
        self.spent += nodes.min(self.remaining());
        if over {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.spent
    }
}
