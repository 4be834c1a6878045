use crate::divisor::ClassMonomial;
use crate::hodge::ChQuery;
use crate::kappa::KappaPsiQuery;
use crate::memo::Memo;

/// Owns every memo table. All evaluation entry points take `&self`, and an
/// `Engine` can be shared between threads.
pub struct Engine {
    pub(crate) tau_memo: Memo<(u32, Vec<u32>)>,
    pub(crate) kappa_memo: Memo<KappaPsiQuery>,
    pub(crate) hodge_memo: Memo<ChQuery>,
    pub(crate) divisor_memo: Memo<ClassMonomial>,
    pub(crate) lambda_memo: Memo<(u32, Vec<u32>)>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            tau_memo: Memo::new(),
            kappa_memo: Memo::new(),
            hodge_memo: Memo::new(),
            divisor_memo: Memo::new(),
            lambda_memo: Memo::new(),
        }
    }

    /// Number of memoized entries per table: tau, kappa, hodge, divisor, lambda.
    pub fn memo_sizes(&self) -> [usize; 5] {
        [
            self.tau_memo.len(),
            self.kappa_memo.len(),
            self.hodge_memo.len(),
            self.divisor_memo.len(),
            self.lambda_memo.len(),
        ]
    }

    pub fn clear(&self) {
        self.tau_memo.clear();
        self.kappa_memo.clear();
        self.hodge_memo.clear();
        self.divisor_memo.clear();
        self.lambda_memo.clear();
    }
}
