// Placeholder entry point; subcommands land with the pipeline module.
int main() { return 0; }
