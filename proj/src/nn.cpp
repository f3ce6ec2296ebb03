#include "freqaug/nn/tensor.hpp"

extern "C" void openblas_set_num_threads(int);

namespace freqaug::nn {

void set_blas_threads(int n) {
    if (n > 0) openblas_set_num_threads(n);
}

}  // namespace freqaug::nn
