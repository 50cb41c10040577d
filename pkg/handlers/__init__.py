# Command handlers, one class per subcommand
