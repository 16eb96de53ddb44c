#include <stdio.h>
#include "bmw2k.h"

int main(void) {
    Bmw2kParams *params = NULL;
    Bmw2kAlgebra *alg = NULL;
    char *out = NULL;
    bool passed = false;

    if (bmw2k_params_generic(2, BMW2K_SIGN_PLUS, &params) != BMW2K_STATUS_OK) {
        fprintf(stderr, "%s\n", bmw2k_last_error());
        return 1;
    }
    if (bmw2k_algebra_new(params, &alg) != BMW2K_STATUS_OK) {
        fprintf(stderr, "%s\n", bmw2k_last_error());
        return 1;
    }
    bmw2k_params_free(params);

    if (bmw2k_reduce_word(alg, "e Y e", &out) == BMW2K_STATUS_OK) {
        printf("e Y e = %s\n", out);
        bmw2k_string_free(out);
    }
    bmw2k_verify(alg, &passed, NULL);
    printf("dim %zu, verified: %s\n", bmw2k_algebra_dim(alg), passed ? "yes" : "no");
    bmw2k_algebra_free(alg);
    return passed ? 0 : 1;
}
