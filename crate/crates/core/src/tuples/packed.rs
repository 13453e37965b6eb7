/// Fixed-width packing of element-index sequences into a `u64`.
///
/// The first entry is most significant, so comparing keys compares the
/// sequences lexicographically by element index (canonical element order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PackedCodec {
    bits: u32,
    len: usize,
    mask: u64,
}

impl PackedCodec {
    /// `None` when `len` entries of `group_order` values do not fit in 64 bits.
    pub fn new(group_order: usize, len: usize) -> Option<Self> {
        let bits = (usize::BITS - (group_order.max(2) - 1).leading_zeros()).max(1);
        if bits as usize * len > 64 {
            return None;
        }
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        Some(Self { bits, len, mask })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn encode(&self, entries: &[u32]) -> u64 {
        debug_assert_eq!(entries.len(), self.len);
        entries
            .iter()
            .fold(0u64, |acc, &e| (acc << self.bits) | u64::from(e))
    }

    #[inline]
    pub fn decode(&self, key: u64, out: &mut [u32]) {
        let mut k = key;
        for slot in out.iter_mut().rev() {
            *slot = (k & self.mask) as u32;
            k >>= self.bits;
        }
    }
}
