#include "dimer/kernels.hpp"

#include <cstdlib>
#include <string>

namespace dimer::kernels {

namespace {

struct Selection {
    BatchKernelFn fn;
    std::string name;
};

Selection select() {
    const char* env = std::getenv("DIMER_SIMD");
    const std::string mode = env ? env : "auto";
    if (mode == "scalar" || mode == "off" || mode == "0")
        return {&eval_batch_scalar, "scalar(forced)"};
    if (simd_kernel_available())
        return {&eval_batch_simd, simd_kernel_label()};
    return {&eval_batch_scalar, "scalar"};
}

const Selection& cached() {
    static const Selection s = select();
    return s;
}

} // namespace

BatchKernelFn active_kernel() { return cached().fn; }

std::string active_kernel_name() { return cached().name; }

} // namespace dimer::kernels
