#include <stdio.h>
#include <string.h>

#include "pnverify.h"

static const char *FILE_TEXT =
    "space M dim=2 coords=x1,x2\n"
    "bivector L on M\n"
    "  1 2: x2\n"
    "endo n on M\n"
    "  1 1: x2\n"
    "  2 2: 1\n"
    "check algebroid L n\n";

int main(void) {
    PnvSpec *spec = NULL;
    if (pnv_spec_parse(FILE_TEXT, &spec) != PNV_STATUS_OK) {
        fprintf(stderr, "%s\n", pnv_last_error());
        return 1;
    }
    PnvOptions opts = pnv_options_default();
    opts.trials = 10;
    PnvReport *report = NULL;
    if (pnv_run(spec, &opts, &report) != PNV_STATUS_OK) {
        fprintf(stderr, "%s\n", pnv_last_error());
        return 1;
    }
    PnvSummary summary;
    pnv_report_summary(report, &summary);
    char *text = NULL;
    pnv_report_text(report, &text);
    printf("%sexit %d, %zu fail\n", text, pnv_report_exit_code(report), summary.fail);
    pnv_string_free(text);
    pnv_report_free(report);
    pnv_spec_free(spec);

    PnvSpec *bad = NULL;
    if (pnv_spec_parse("space M dim=0\n", &bad) != PNV_STATUS_PARSE || bad != NULL) {
        return 1;
    }
    printf("parse error: %s\n", pnv_last_error());
    return 0;
}
