/// Number of base stations the source connects to (macrodiversity order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiversityOrder {
    One,
    Two,
}

impl DiversityOrder {
    pub fn count(self) -> usize {
        match self {
            DiversityOrder::One => 1,
            DiversityOrder::Two => 2,
        }
    }

    pub fn from_count(n: usize) -> Option<Self> {
        match n {
            1 => Some(DiversityOrder::One),
            2 => Some(DiversityOrder::Two),
            _ => None,
        }
    }
}

impl std::fmt::Display for DiversityOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.count())
    }
}

/// How signals from multiple base stations are merged at the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombiningScheme {
    /// Use only the strongest signal.
    Selection,
    /// Coherently combine; modeled as the sum of per-station terms.
    Diversity,
}

impl CombiningScheme {
    pub fn name(self) -> &'static str {
        match self {
            CombiningScheme::Selection => "selection",
            CombiningScheme::Diversity => "diversity",
        }
    }
}

impl std::fmt::Display for CombiningScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
