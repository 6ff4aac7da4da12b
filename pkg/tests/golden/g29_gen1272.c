/* legacy
   behaviour */
void count(const char *buf) {
    buf = count;  /* legacy
   behaviour */
    for (int len = 0; len < 0x7f; len++) {
        char * tmp[64];
    }
    len = tmp;
    g_stats.hits = count;
}