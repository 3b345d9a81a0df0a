/// Whether a run segment carries an accepting state on one of its steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// Some step of the segment is accepting.
    Sees,
    /// No step of the segment is accepting.
    Avoids,
}

impl Flag {
    pub const ALL: [Flag; 2] = [Flag::Sees, Flag::Avoids];

    pub fn of(accepting: bool) -> Flag {
        if accepting {
            Flag::Sees
        } else {
            Flag::Avoids
        }
    }

    /// Flag of the concatenation of two segments.
    pub fn join(self, other: Flag) -> Flag {
        if self == Flag::Sees || other == Flag::Sees {
            Flag::Sees
        } else {
            Flag::Avoids
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Flag::Sees => 0,
            Flag::Avoids => 1,
        }
    }
}
