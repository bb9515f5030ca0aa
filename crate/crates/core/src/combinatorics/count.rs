use super::word::ClassId;

/// Exact binomial coefficient. Panics if the result overflows `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        acc = acc_r
            .checked_mul(num / den_r)
            .unwrap_or_else(|| panic!("binomial({n}, {k}) overflows u128"));
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `|C_{a,b}(n)|`: ballot-number count of words with `a` unmatched downs and
/// `b` unmatched ups.
pub fn class_size(class: ClassId, n_sites: usize) -> u128 {
    let ab = class.a + class.b;
    if ab > n_sites || !(n_sites - ab).is_multiple_of(2) {
        return 0;
    }
    if ab == n_sites {
        return 1;
    }
    let n = n_sites as u64;
    let top = ((n_sites + ab) / 2) as u64;
    binomial(n, top) - binomial(n, top + 1)
}

pub fn catalan(n: usize) -> u128 {
    class_size(ClassId::DYCK, 2 * n)
}

/// Natural logs of factorials, accumulated with compensated summation.
#[derive(Debug, Clone)]
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        table.push(0.0);
        for k in 1..=max {
            let y = (k as f64).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            table.push(sum);
        }
        LogFactorials { table }
    }

    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.table[n]
    }

    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.table[n] - self.table[k] - self.table[n - k]
    }

    /// `ln |C_{0,m}(len)|`, or `None` when the class is empty.
    ///
    /// Uses `|C_{0,m}(L)| = (m+1)/((L+m)/2+1) · binom(L, (L+m)/2)`.
    pub fn ln_class_size(&self, len: usize, m: usize) -> Option<f64> {
        if m > len || !(len - m).is_multiple_of(2) {
            return None;
        }
        let top = (len + m) / 2;
        Some(self.ln_binomial(len, top) + ((m + 1) as f64).ln() - ((top + 1) as f64).ln())
    }

    pub fn ln_catalan(&self, n: usize) -> f64 {
        self.ln_binomial(2 * n, n) - ((n + 1) as f64).ln()
    }
}
