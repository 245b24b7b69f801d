#include <stdio.h>
#include <string.h>

#include "graphon.h"

#define CHECK(cond)                                          \
    do {                                                     \
        if (!(cond)) {                                       \
            fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); \
            return 1;                                        \
        }                                                    \
    } while (0)

int main(void) {
    GraphonStep *w = NULL;
    CHECK(graphon_step_make_wka(4, 1, 2, &w) == GRAPHON_STATUS_OK);

    char *density = NULL;
    CHECK(graphon_step_edge_density(w, &density) == GRAPHON_STATUS_OK);
    CHECK(strcmp(density, "19/32") == 0);
    graphon_string_free(density);

    GraphonGraph *g5 = NULL;
    CHECK(graphon_graph_make_special('G', 5, &g5) == GRAPHON_STATUS_OK);
    CHECK(graphon_graph_vertex_count(g5) == 15);
    CHECK(graphon_graph_edge_count(g5) == 50);

    GraphonGraph *sample = NULL;
    size_t blocks[30];
    CHECK(graphon_sample(w, 30, 1, &sample, blocks) == GRAPHON_STATUS_OK);
    CHECK(graphon_graph_vertex_count(sample) == 30);

    GraphonVerdict v;
    CHECK(graphon_classify(sample, GRAPHON_CLASS_STRING, &v, NULL) == GRAPHON_STATUS_OK);
    /* a sample of this graphon is always a string graph */
    CHECK(v != GRAPHON_VERDICT_NON_MEMBER);

    GraphonGraph *bad = NULL;
    CHECK(graphon_graph_parse("2 1\n0 5\n", &bad) == GRAPHON_STATUS_PARSE);
    CHECK(strlen(graphon_last_error()) > 0);

    graphon_graph_free(sample);
    graphon_graph_free(g5);
    graphon_step_free(w);
    puts("ok");
    return 0;
}
