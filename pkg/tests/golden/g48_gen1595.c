/* check */
static int count(int buf) {
    unsigned len[10];  // see rfc
    check_state(0);  /* legacy
   behaviour */
    buf = 64 + len;  // note
    g_stats.hits = count;
    len = 100;
    return 10;
}