#include <stdio.h>
#include <string.h>

#include "all2sat.h"

static const char *THIRTY_MODELS =
    "p cnf 9 15\n-7 -6 0\n-9 -8 0\n-8 -7 0\n-8 6 0\n-6 3 0\n-5 3 0\n3 6 0\n"
    "-2 1 0\n-1 6 0\n-5 -2 0\n-9 -1 0\n-9 -2 0\n-9 4 0\n-9 -7 0\n-2 4 0\n";

int main(void) {
    All2satFormula *f = NULL;
    if (all2sat_formula_parse(THIRTY_MODELS, &f) != ALL2SAT_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", all2sat_last_error());
        return 1;
    }
    char *count = NULL;
    if (all2sat_formula_count(f, &count) != ALL2SAT_STATUS_OK || strcmp(count, "30") != 0) {
        return 2;
    }
    all2sat_string_free(count);

    All2satModelStream *models = NULL;
    all2sat_models_new(f, &models);
    uint8_t values[9];
    int n = 0;
    while (all2sat_models_next(models, values, sizeof values) == ALL2SAT_STATUS_OK) {
        n++;
    }
    all2sat_models_free(models);

    All2satCubeStream *cubes = NULL;
    all2sat_cubes_new(f, &cubes);
    uint32_t twos = 0;
    unsigned long total = 0;
    while (all2sat_cubes_next(cubes, values, sizeof values, &twos) == ALL2SAT_STATUS_OK) {
        total += 1ul << twos;
    }
    all2sat_cubes_free(cubes);
    all2sat_formula_free(f);

    if (all2sat_formula_parse("p cnf 2 1\n1 2 -1 0\n", &f) != ALL2SAT_STATUS_PARSE_ERROR) {
        return 3;
    }
    printf("%d %lu\n", n, total);
    return n == 30 && total == 30 ? 0 : 4;
}
