/* legacy
   behaviour */
int count(void) {
    g_stats.hits = count;
    return count | 3;
}