void walk(node_t *root) {
    if (root) {
        node_t *cur = root;
        while (cur) {
            { int depth = 0; mark(cur, depth); }
            cur = cur->next;
        }
    }
}
