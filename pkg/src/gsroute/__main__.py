from gsroute.cli import main

main()
