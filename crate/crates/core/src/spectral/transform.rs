use std::cell::RefCell;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place unnormalized DFT, sum_j x_j exp(-2 pi i j k / N).
pub(crate) fn fft_forward(buf: &mut [Complex64]) {
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    plan.process(buf);
}

/// In-place unnormalized inverse DFT, sum_k X_k exp(+2 pi i j k / N).
pub(crate) fn fft_inverse(buf: &mut [Complex64]) {
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()));
    plan.process(buf);
}
