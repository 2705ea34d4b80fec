use std::cmp::Ordering;

/// Index of a generator in its presentation's generator list.
pub type Gen = u16;

/// A monomial in the free algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        Self(vec![g])
    }

    pub fn from_gens(gens: Vec<Gen>) -> Self {
        Self(gens)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · self · suffix`
    pub fn wrap(&self, prefix: &[Gen], suffix: &[Gen]) -> Word {
        let mut v = Vec::with_capacity(prefix.len() + self.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(suffix);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains_gen(&self, g: Gen) -> bool {
        self.0.contains(&g)
    }

    /// Offset of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &[Gen]) -> Option<usize> {
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

/// Degree-lexicographic order under a generator precedence.
///
/// `rank[g]` is the precedence of generator `g`; larger rank means larger letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    rank: Vec<u32>,
}

impl TermOrder {
    /// `rank` must be a permutation of `0..rank.len()`.
    pub fn new(rank: Vec<u32>) -> Self {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            assert!((r as usize) < rank.len() && !seen[r as usize], "rank table is not a permutation");
            seen[r as usize] = true;
        }
        Self { rank }
    }

    /// Precedence equal to declaration order.
    pub fn identity(n: usize) -> Self {
        Self { rank: (0..n as u32).collect() }
    }

    pub fn rank(&self, g: Gen) -> u32 {
        self.rank[g as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Generators sorted by ascending precedence.
    pub fn ascending(&self) -> Vec<Gen> {
        let mut gens: Vec<Gen> = (0..self.rank.len() as Gen).collect();
        gens.sort_by_key(|&g| self.rank[g as usize]);
        gens
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            for (a, b) in u.letters().iter().zip(v.letters()) {
                match self.rank(*a).cmp(&self.rank(*b)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Sort key whose natural order is this term order.
    pub(crate) fn key(&self, w: &Word) -> OrderKey {
        OrderKey(w.letters().iter().map(|&g| self.rank(g)).collect())
    }
}

/// Word rewritten into rank space; compares by length then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct OrderKey(pub(crate) Vec<u32>);

impl Ord for OrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for OrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // generators: 0 = zeta, 1 = xi, 2 = eta with precedence eta > xi > zeta
    fn ord() -> TermOrder {
        TermOrder::new(vec![0, 1, 2])
    }

    #[test]
    fn empty_words_are_equal() {
        assert_eq!(ord().compare(&Word::empty(), &Word::empty()), Ordering::Equal);
    }

    #[test]
    fn same_degree_compares_by_first_letter() {
        let xi_zeta = Word::from_gens(vec![1, 0]);
        let zeta_xi = Word::from_gens(vec![0, 1]);
        assert_eq!(ord().compare(&xi_zeta, &zeta_xi), Ordering::Greater);
    }

    #[test]
    fn degree_dominates() {
        let zeta = Word::single(0);
        let xi_eta = Word::from_gens(vec![1, 2]);
        assert_eq!(ord().compare(&zeta, &xi_eta), Ordering::Less);
    }

    #[test]
    fn rank_table_reorders() {
        let o = TermOrder::new(vec![2, 0, 1]);
        assert_eq!(o.ascending(), vec![1, 2, 0]);
        assert_eq!(o.compare(&Word::single(0), &Word::single(2)), Ordering::Greater);
    }
}
