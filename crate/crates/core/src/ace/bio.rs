use std::ops::Range;

/// One BIO tag over span types `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bio<T> {
    O,
    B(T),
    I(T),
}

impl<'a> Bio<&'a str> {
    /// Parse `O`, `B-x` or `I-x`.
    pub fn parse(label: &'a str) -> Option<Self> {
        match label {
            "O" => Some(Bio::O),
            _ => match label.split_once('-') {
                Some(("B", t)) if !t.is_empty() => Some(Bio::B(t)),
                Some(("I", t)) if !t.is_empty() => Some(Bio::I(t)),
                _ => None,
            },
        }
    }
}

impl Bio<usize> {
    /// Tag for a label index in an `O, B-0, I-0, B-1, I-1, ...` layout.
    pub fn from_index(index: usize) -> Self {
        match index {
            0 => Bio::O,
            i if i % 2 == 1 => Bio::B((i - 1) / 2),
            i => Bio::I((i - 2) / 2),
        }
    }
}

/// Maximal contiguous typed spans. A stray `I-x` that does not continue an
/// `x` span opens a new one, as if it were `B-x`.
pub fn decode_bio<T: Clone + PartialEq>(labels: &[Bio<T>]) -> Vec<(T, Range<usize>)> {
    let mut out = Vec::new();
    let mut open: Option<(T, usize)> = None;
    for (i, label) in labels.iter().enumerate() {
        match label {
            Bio::O => {
                if let Some((t, s)) = open.take() {
                    out.push((t, s..i));
                }
            }
            Bio::B(t) => {
                if let Some((pt, s)) = open.take() {
                    out.push((pt, s..i));
                }
                open = Some((t.clone(), i));
            }
            Bio::I(t) => match &open {
                Some((pt, _)) if pt == t => {}
                _ => {
                    if let Some((pt, s)) = open.take() {
                        out.push((pt, s..i));
                    }
                    open = Some((t.clone(), i));
                }
            },
        }
    }
    if let Some((t, s)) = open {
        out.push((t, s..labels.len()));
    }
    out
}
