# Components package for shared command-line helpers
