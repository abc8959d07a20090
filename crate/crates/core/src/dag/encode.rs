use super::{Flavor, LabeledDag};
use crate::diploid::PairwiseAlignment;
use crate::error::{Error, Result};
use crate::strings::Str;

/// Encodes a pairwise alignment as a two-path-coverable ε-labeled DAG.
///
/// Node 0 is the ε source, nodes `2i+1` / `2i+2` are the row-A / row-B
/// entries of column `i` (ε where the row has a gap), and the last node is
/// the ε sink. Consecutive columns are joined by all four straight and
/// crossing arcs, so every source-to-sink cover pair spells a recombination.
pub fn encode_diploid(a: &PairwiseAlignment) -> Result<LabeledDag> {
    let l = a.len();
    if l == 0 {
        return Err(Error::EmptyAlignment);
    }
    let va = |i: usize| 2 * i + 1;
    let vb = |i: usize| 2 * i + 2;
    let sink = 2 * l + 1;
    let mut labels = vec![Str::new(); 2 * l + 2];
    for i in 0..l {
        labels[va(i)] = a.row_a()[i].into_iter().collect();
        labels[vb(i)] = a.row_b()[i].into_iter().collect();
    }
    let mut arcs = vec![(0, va(0)), (0, vb(0))];
    for i in 0..l - 1 {
        arcs.extend([
            (va(i), va(i + 1)),
            (va(i), vb(i + 1)),
            (vb(i), vb(i + 1)),
            (vb(i), va(i + 1)),
        ]);
    }
    arcs.extend([(va(l - 1), sink), (vb(l - 1), sink)]);
    LabeledDag::new(Flavor::SigmaEps, labels, &arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::two_path_coverable;
    use crate::strings::Alphabet;

    #[test]
    fn two_column_example() {
        let ab = Alphabet::new("ab").unwrap();
        let aln = PairwiseAlignment::parse(&ab, "a-", "-b").unwrap();
        let d = encode_diploid(&aln).unwrap();
        assert_eq!(d.node_count(), 6);
        // 2 source arcs + 4 column arcs + 2 sink arcs.
        assert_eq!(d.arc_count(), 8);
        assert_eq!(ab.render(d.label(1)), "a");
        assert!(d.label(2).is_empty());
        assert!(d.label(3).is_empty());
        assert_eq!(ab.render(d.label(4)), "b");
        assert_eq!(d.unique_source().unwrap(), 0);
        assert_eq!(d.unique_sink().unwrap(), 5);
        assert!(d.has_arc(4, 5) && d.has_arc(3, 5) && !d.has_arc(2, 5));
        assert!(two_path_coverable(&d));
    }

    #[test]
    fn single_column() {
        let ab = Alphabet::new("ab").unwrap();
        let aln = PairwiseAlignment::parse(&ab, "a", "b").unwrap();
        let d = encode_diploid(&aln).unwrap();
        assert_eq!((d.node_count(), d.arc_count()), (4, 4));
    }

    #[test]
    fn empty_alignment_rejected() {
        let aln = PairwiseAlignment::new(vec![], vec![]).unwrap();
        assert!(matches!(encode_diploid(&aln), Err(Error::EmptyAlignment)));
    }
}
