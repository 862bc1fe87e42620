#include <stdio.h>
#include <string.h>
#include "weylpieces.h"

int main(void) {
    WpRootSystem *rs = NULL;
    if (wp_root_system_new("A3", &rs) != WP_OK) return 10;
    uint64_t order = 0;
    if (wp_root_system_weyl_order(rs, &order) != WP_OK || order != 24) return 11;
    char *json = NULL;
    if (wp_enumerate_pieces_json(rs, "1,3", "flip", &json) != WP_OK) return 12;
    if (strstr(json, "\"version\":\"weylpieces/1\"") == NULL) return 13;
    wp_string_free(json);
    if (wp_classify_json(rs, "1", "id", "9", &json) != WP_ERR_CONFIG) return 14;
    if (wp_last_error_message() == NULL) return 15;
    wp_root_system_free(rs);
    printf("ok\n");
    return 0;
}
