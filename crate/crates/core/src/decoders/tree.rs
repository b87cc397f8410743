//! Successive-cancellation schedule over the polar butterfly, generic in the
//! message algebra.
//!
//! Channel values are stored in Kronecker order (`x = u·K₂^⊗m`, i.e. the
//! received word with the bit-reversal undone). A node of size `2^(λ+1)`
//! covering inputs `(a, b)` sees `x = ((a⊕b)·K', b·K')`, so its left child
//! gets the check combination of the two halves and its right child the
//! variable combination of `first half ⊕ left partial sums` with the second
//! half.

pub(crate) trait Algebra {
    type Msg: Clone;
    type Bit: Clone;

    fn check(&mut self, a: &Self::Msg, b: &Self::Msg) -> Self::Msg;

    /// `via_sums` is the first-half message with the left partial sums
    /// already added; `direct` is the second-half message.
    fn var(&mut self, via_sums: Self::Msg, direct: &Self::Msg) -> Self::Msg;

    fn add_bit(&self, msg: &Self::Msg, bit: &Self::Bit) -> Self::Msg;

    fn add_bits(&self, a: &Self::Bit, b: &Self::Bit) -> Self::Bit;
}

#[derive(Clone, Debug)]
pub(crate) struct ScTree<M, B> {
    m: u32,
    /// `alpha[λ]` holds the `2^λ` messages of the active node at level `λ`;
    /// `alpha[m]` is the channel.
    alpha: Vec<Vec<M>>,
    /// Partial sums of the most recent left child at each level.
    left_sums: Vec<Vec<B>>,
    /// Partial sums of the whole tree once the last bit is committed.
    root_sums: Option<Vec<B>>,
}

impl<M: Clone, B: Clone> ScTree<M, B> {
    /// `channel` must already be in Kronecker order and have length `2^m`.
    pub(crate) fn new(channel: Vec<M>, fill_msg: M, fill_bit: B) -> Self {
        let n = channel.len();
        assert!(n.is_power_of_two());
        let m = n.trailing_zeros();
        let mut alpha: Vec<Vec<M>> = (0..m).map(|l| vec![fill_msg.clone(); 1 << l]).collect();
        alpha.push(channel);
        let left_sums = (0..m).map(|l| vec![fill_bit.clone(); 1 << l]).collect();
        ScTree {
            m,
            alpha,
            left_sums,
            root_sums: None,
        }
    }

    /// Computes and returns the message for input `phase`. Phases must be
    /// visited in order, each followed by [`ScTree::commit`].
    pub(crate) fn message<A>(&mut self, alg: &mut A, phase: usize) -> &M
    where
        A: Algebra<Msg = M, Bit = B>,
    {
        let m = self.m as usize;
        if m == 0 {
            return &self.alpha[0][0];
        }
        let top = if phase == 0 {
            m
        } else {
            let t = phase.trailing_zeros() as usize;
            // right child at level t
            let h = 1 << t;
            let (lo, hi) = self.alpha.split_at_mut(t + 1);
            let (dst, src) = (&mut lo[t], &hi[0]);
            let sums = &self.left_sums[t];
            for j in 0..h {
                let via = alg.add_bit(&src[j], &sums[j]);
                dst[j] = alg.var(via, &src[j + h]);
            }
            t
        };
        for l in (0..top).rev() {
            let h = 1 << l;
            let (lo, hi) = self.alpha.split_at_mut(l + 1);
            let (dst, src) = (&mut lo[l], &hi[0]);
            for j in 0..h {
                dst[j] = alg.check(&src[j], &src[j + h]);
            }
        }
        &self.alpha[0][0]
    }

    pub(crate) fn commit<A>(&mut self, alg: &A, phase: usize, bit: B)
    where
        A: Algebra<Msg = M, Bit = B>,
    {
        let m = self.m as usize;
        let mut x = vec![bit];
        let mut l = 0;
        loop {
            if l == m {
                self.root_sums = Some(x);
                return;
            }
            if phase >> l & 1 == 0 {
                self.left_sums[l] = x;
                return;
            }
            let left = &self.left_sums[l];
            let mut parent: Vec<B> = left.iter().zip(&x).map(|(a, b)| alg.add_bits(a, b)).collect();
            parent.extend(x);
            x = parent;
            l += 1;
        }
    }

    /// `u·K₂^⊗m` after all phases are committed.
    #[allow(dead_code)]
    pub(crate) fn root_sums(&self) -> Option<&[B]> {
        self.root_sums.as_deref()
    }
}
