#include <stdio.h>
#include "redsim.h"
int main(void) {
    RedsimCurve *w = NULL, *g = NULL;
    if (redsim_curve_new(REDSIM_RESOURCE_W, 8, 1, 0.0, 1.0, 101, &w) != REDSIM_STATUS_OK) return 1;
    redsim_curve_new(REDSIM_RESOURCE_GHZ, 8, 1, 0.0, 1.0, 101, &g);
    double t = 0;
    RedsimStatus s = redsim_threshold(w, g, &t);
    printf("status=%d threshold=%.5f\n", s, t);
    s = redsim_threshold(g, w, &t);
    printf("status=%d msg=%s\n", s, redsim_last_error_message());
    redsim_curve_free(w); redsim_curve_free(g);
    return 0;
}
