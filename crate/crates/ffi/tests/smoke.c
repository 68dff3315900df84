#include <stdio.h>
#include "tonal.h"

int main(void) {
    TonalGraph *g = NULL;
    uint64_t classes = 0, value = 0;
    bool p4 = true, k3 = true;
    TonalHost *h = NULL;

    if (tonal_graph_parse("p 4\ne 0 1\ne 1 2\ne 2 3\n", &g) != TONAL_STATUS_OK) return 1;
    if (tonal_graph_class_count(g, &classes) != TONAL_STATUS_OK) return 2;
    if (tonal_star_formula(16, 4, &value) != TONAL_STATUS_OK) return 3;
    if (tonal_host_canonical(120, &h) != TONAL_STATUS_OK) return 4;
    if (tonal_host_obstructions(h, &p4, &k3) != TONAL_STATUS_OK) return 5;
    if (tonal_host_canonical(6, &h) != TONAL_STATUS_DOMAIN || tonal_last_error() == NULL) return 6;
    printf("classes=%llu value=%llu rbr_p4=%d k3=%d\n",
           (unsigned long long)classes, (unsigned long long)value, p4, k3);
    tonal_graph_free(g);
    tonal_host_free(h);
    return 0;
}
