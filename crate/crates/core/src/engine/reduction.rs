use alloc::vec::Vec;
use core::ops::Range;

use crate::models::ProbabilityContext;
use crate::partition::Partition;

/// State of the interval-block recursion for a noncrossing partition.
///
/// Each step removes one block that is an interval of the remaining points
/// and folds a value for it into the neighbouring argument: it
/// left-multiplies the next remaining argument, or right-multiplies the
/// previous one when the block is last.
#[derive(Debug, Clone)]
pub struct Reduction<E> {
    labels: Vec<u8>,
    points: Vec<usize>,
    args: Vec<E>,
    result: Option<E>,
}

impl<E: Clone> Reduction<E> {
    /// `args` must have one entry per point of `partition`, which must be
    /// noncrossing.
    pub fn new(partition: &Partition, args: Vec<E>) -> Self {
        debug_assert_eq!(partition.n(), args.len());
        Reduction { labels: partition.labels().to_vec(), points: (0..args.len()).collect(), args, result: None }
    }

    pub fn is_done(&self) -> bool {
        self.labels.is_empty()
    }

    /// Remaining blocks that occupy consecutive slots, in slot order.
    pub fn candidates(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.labels.len() {
            let l = self.labels[start];
            let mut end = start + 1;
            while end < self.labels.len() && self.labels[end] == l {
                end += 1;
            }
            if !self.labels[end..].contains(&l) && !self.labels[..start].contains(&l) {
                out.push(start..end);
            }
            start = end;
        }
        out
    }

    /// The first interval block, the one the engine extracts.
    pub fn first(&self) -> Option<Range<usize>> {
        self.candidates().into_iter().next()
    }

    /// Original indices of the points in a span of slots.
    pub fn points(&self, span: Range<usize>) -> &[usize] {
        &self.points[span]
    }

    /// Current arguments in a span of slots.
    pub fn args(&self, span: Range<usize>) -> &[E] {
        &self.args[span]
    }

    /// Removes the block at `span` and folds `value` into its neighbour.
    pub fn extract<C: ProbabilityContext<Elem = E>>(&mut self, ctx: &C, span: Range<usize>, value: E) {
        let start = span.start;
        self.labels.drain(span.clone());
        self.points.drain(span.clone());
        self.args.drain(span);
        if start < self.args.len() {
            self.args[start] = ctx.mul(&value, &self.args[start]);
        } else if start > 0 {
            self.args[start - 1] = ctx.mul(&self.args[start - 1], &value);
        } else {
            self.result = Some(value);
        }
    }

    /// Value after every block is gone; the unit for zero points.
    pub fn finish<C: ProbabilityContext<Elem = E>>(self, ctx: &C) -> E {
        debug_assert!(self.is_done());
        self.result.unwrap_or_else(|| ctx.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ScalarFreeSpec;

    #[test]
    fn candidates_of_nested_partition() {
        let p: Partition = "{1,4}{2}{3}{5,6}".parse().unwrap();
        let r = Reduction::new(&p, alloc::vec![0u8; 6]);
        assert_eq!(r.candidates(), alloc::vec![1..2, 2..3, 4..6]);
    }

    #[test]
    fn terminal_block_right_multiplies() {
        let spec =
            ScalarFreeSpec::new(alloc::vec![("a".into(), alloc::vec![]), ("b".into(), alloc::vec![])], 4).unwrap();
        let (a, b) = (spec.generator(0), spec.generator(1));
        let p: Partition = "{1}{2,3}".parse().unwrap();
        let mut r = Reduction::new(&p, alloc::vec![a.clone(), b.clone(), b.clone()]);
        let span = r.candidates()[1].clone();
        assert_eq!(span, 1..3);
        r.extract(&spec, span, b.clone());
        assert_eq!(r.args(0..1), &[a.mul(&b)]);
        r.extract(&spec, 0..1, a.clone());
        assert!(r.is_done());
        assert_eq!(r.finish(&spec), a);
    }
}
